#include "kicked_top/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <numeric>
#include <thread>

namespace kicked_top
{

namespace
{

constexpr double kAlignTol = 1e-9;

int resolve_threads(int requested, int work)
{
	int n = requested > 0 ? requested : int(std::thread::hardware_concurrency());
	return std::clamp(n, 1, std::max(1, work));
}

// Uniform step of a series axis; AlignmentError if the axis is not a uniform grid.
double uniform_step(const MeasureSeries& s)
{
	s.validate();
	if(s.axis.size() < 2) {
		throw AlignmentError("period check: series needs at least two grid points");
	}
	const std::size_t n = s.axis.size();
	const double h = (s.axis.back() - s.axis.front()) / double(n - 1);
	for(std::size_t i = 0; i < n; ++i) {
		if(std::abs(s.axis[i] - (s.axis.front() + double(i) * h)) > kAlignTol * std::max(1.0, h)) {
			throw AlignmentError("period check: axis is not a uniform grid (index " + std::to_string(i) + ")");
		}
	}
	return h;
}

// Integer number of steps in `length`, or AlignmentError.
long aligned_steps(double length, double h, const char* what)
{
	const double ratio = length / h;
	const double idx = std::round(ratio);
	if(std::abs(length - idx * h) > kAlignTol) {
		throw AlignmentError(std::string(what) + ": grid step " + std::to_string(h) + " does not divide "
			+ std::to_string(length) + " to 1e-9 (ratio " + std::to_string(ratio) + ")");
	}
	return long(idx);
}

} // namespace

KGrid KGrid::from_range(double start, double stop, double step)
{
	if(!(step > 0.0) || !(stop > start)) {
		throw SpecError("k grid: need step > 0 and stop > start");
	}
	const double n = std::floor((stop - start) / step * (1.0 + 1e-9));
	return {start, step, int(n) + 1};
}

KGrid KGrid::from_divisions(double start, double stop, int divisions, bool include_stop)
{
	if(divisions < 1 || !(stop > start)) {
		throw SpecError("k grid: need divisions >= 1 and stop > start");
	}
	return {start, (stop - start) / double(divisions), include_stop ? divisions + 1 : divisions};
}

KGrid KGrid::aligned(double kappa, double approx_step, int periods, int multiple)
{
	if(!(kappa > 0.0) || !(approx_step > 0.0) || periods < 1 || multiple < 1) {
		throw SpecError("aligned k grid: invalid arguments");
	}
	const long n = std::max<long>(1, std::lround(kappa / approx_step / multiple)) * multiple;
	return {0.0, kappa / double(n), int(n * periods)};
}

void SweepSpec::validate() const
{
	if(!(grid.step > 0.0) || grid.count < 1) {
		throw SpecError("sweep: k grid needs step > 0 and at least one point");
	}
	if(m < 0) {
		throw SpecError("sweep: m must be >= 0");
	}
	const auto forbid = [this](bool present, const char* extra) {
		if(present) {
			throw SpecError("sweep: extra '" + std::string(extra) + "' does not apply to measure " + measure_name(measure));
		}
	};
	switch(measure) {
	case Measure::Otoc:
		forbid(dk.has_value(), "dk");
		forbid(angles.has_value(), "theta/phi");
		forbid(coarse_len.has_value() || partition.has_value(), "coarse graining");
		if(observable.value_or(OtocObservable::Goe) == OtocObservable::Goe && !w_seed) {
			throw SpecError("sweep: otoc with a GOE observable needs w_seed");
		}
		forbid(observable == OtocObservable::Jz && w_seed.has_value(), "w_seed (observable is jz)");
		break;
	case Measure::Echo:
		if(!dk) throw SpecError("sweep: le needs dk");
		forbid(angles.has_value(), "theta/phi");
		forbid(coarse_len.has_value() || partition.has_value(), "coarse graining");
		forbid(w_seed.has_value(), "w_seed");
		forbid(observable.has_value(), "observable");
		break;
	case Measure::GenEntanglement:
		if(!angles) throw SpecError("sweep: ge needs coherent-state angles");
		forbid(dk.has_value(), "dk");
		forbid(coarse_len.has_value() || partition.has_value(), "coarse graining");
		forbid(w_seed.has_value(), "w_seed");
		forbid(observable.has_value(), "observable");
		break;
	case Measure::ObsEntropy:
		if(!angles) throw SpecError("sweep: oe needs coherent-state angles");
		if(!coarse_len && partition.value_or("blocks") != "sign") {
			throw SpecError("sweep: oe needs coarse_len or partition=sign");
		}
		if(partition && *partition != "blocks" && *partition != "sign") {
			throw SpecError("sweep: partition must be 'blocks' or 'sign'");
		}
		forbid(dk.has_value(), "dk");
		forbid(w_seed.has_value(), "w_seed");
		forbid(observable.has_value(), "observable");
		break;
	}
}

std::vector<double> evaluate_grid(const KGrid& grid, int threads, const std::function<double(double)>& f)
{
	std::vector<double> out(grid.count);
	const int workers = resolve_threads(threads, grid.count);
	if(workers == 1) {
		for(int i = 0; i < grid.count; ++i) out[i] = f(grid.at(i));
		return out;
	}
	std::atomic<int> next{0};
	std::exception_ptr failure;
	std::mutex failure_mutex;
	{
		std::vector<std::jthread> pool;
		for(int w = 0; w < workers; ++w) {
			pool.emplace_back([&] {
				for(int i = next++; i < grid.count; i = next++) {
					try {
						out[i] = f(grid.at(i));
					} catch(...) {
						const std::lock_guard lock(failure_mutex);
						if(!failure) failure = std::current_exception();
					}
				}
			});
		}
	}
	if(failure) std::rethrow_exception(failure);
	return out;
}

CoarseGraining coarse_graining_for(const Spin& spin, const std::optional<int>& coarse_len,
	const std::optional<std::string>& partition)
{
	if(partition.value_or("blocks") == "sign") {
		return sign_coarse_graining(spin);
	}
	return default_coarse_graining(spin, coarse_len.value_or(2));
}

ComplexMatrix otoc_observable_for(const Spin& spin, OtocObservable observable, const std::optional<std::uint64_t>& w_seed)
{
	if(observable == OtocObservable::Jz) {
		return jz_matrix(spin);
	}
	return goe_sample(spin.dim(), w_seed.value_or(0));
}

MeasureSeries run_sweep(const SweepSpec& spec)
{
	spec.validate();
	const Spin spin = spec.spin;
	const ComplexMatrix rot = precession(spin, spec.alpha);
	const int m = spec.m;

	std::function<double(double)> point;
	switch(spec.measure) {
	case Measure::Otoc: {
		const ComplexMatrix w = otoc_observable_for(spin, spec.observable.value_or(OtocObservable::Goe), spec.w_seed);
		point = [=, &rot](double k) { return otoc(build_floquet(spin, k, rot), w, m); };
		break;
	}
	case Measure::Echo: {
		const double dk = *spec.dk;
		point = [=, &rot](double k) {
			if(m == 0 || dk == 0.0) return 1.0;
			return echo_from_powers(floquet_power(build_floquet(spin, k, rot), m),
				floquet_power(build_floquet(spin, k + dk, rot), m));
		};
		break;
	}
	case Measure::GenEntanglement: {
		const StateVector psi0 = coherent_state(spin, *spec.angles);
		const AngularMomentum<double> ops(spin);
		point = [=, &rot](double k) {
			const ComplexMatrix u = build_floquet(spin, k, rot);
			StateVector psi = psi0;
			for(int step = 0; step < m; ++step) psi = u * psi;
			return generalized_entanglement(psi, ops);
		};
		break;
	}
	case Measure::ObsEntropy: {
		const StateVector psi0 = coherent_state(spin, *spec.angles);
		const CoarseGraining cg = coarse_graining_for(spin, spec.coarse_len, spec.partition);
		point = [=, &rot](double k) {
			const ComplexMatrix u = build_floquet(spin, k, rot);
			StateVector psi = psi0;
			for(int step = 0; step < m; ++step) psi = u * psi;
			return observational_entropy(psi, cg);
		};
		break;
	}
	}

	MeasureSeries s;
	s.meta.measure = spec.measure;
	s.meta.spin = spin;
	s.meta.alpha = spec.alpha;
	s.meta.m = m;
	s.meta.dk = spec.dk;
	s.meta.angles = spec.angles;
	s.meta.coarse_len = spec.coarse_len;
	s.meta.partition = spec.partition;
	s.meta.w_seed = spec.w_seed;
	s.meta.seed = spec.seed;
	if(spec.measure == Measure::Otoc) {
		s.meta.observable = spec.observable.value_or(OtocObservable::Goe);
	}
	s.axis_name = "k";
	s.axis.resize(spec.grid.count);
	for(int i = 0; i < spec.grid.count; ++i) s.axis[i] = spec.grid.at(i);
	s.values = evaluate_grid(spec.grid, spec.threads, point);
	return s;
}

PeriodReport check_period(const MeasureSeries& series, double kappa, double tol)
{
	if(!(kappa > 0.0)) {
		throw ContractError("check_period: kappa must be > 0");
	}
	const double h = uniform_step(series);
	const long shift = aligned_steps(kappa, h, "check_period");
	const double span = double(series.axis.size()) * h;
	if(span < 2.0 * kappa - kAlignTol) {
		throw AlignmentError("check_period: grid must span at least 2 kappa");
	}
	PeriodReport r;
	r.kappa = kappa;
	r.tolerance = tol;
	for(std::size_t i = 0; i + shift < series.values.size(); ++i) {
		r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(series.values[i + shift] - series.values[i]));
		++r.pairs;
	}
	r.pass = r.max_abs_deviation <= tol;
	return r;
}

double minimal_period(const MeasureSeries& series, double kappa_j, const std::vector<int>& divisors, double tol)
{
	const PeriodReport full = check_period(series, kappa_j, tol);
	if(!full.pass) {
		throw NumericalError("minimal_period: kappa_j = " + std::to_string(kappa_j)
			+ " fails the periodicity test (deviation " + std::to_string(full.max_abs_deviation)
			+ "); invariant violation");
	}
	std::vector<int> sorted = divisors;
	std::sort(sorted.begin(), sorted.end(), std::greater<>());
	for(int n : sorted) {
		if(n <= 1) continue;
		if(check_period(series, kappa_j / double(n), tol).pass) {
			return kappa_j / double(n);
		}
	}
	return kappa_j;
}

double reflection_reference(const Spin& spin)
{
	const double tj = spin.twice_j();
	return spin.is_integer() ? 2.0 * std::numbers::pi * tj : std::numbers::pi * tj;
}

PeriodReport reflection_check(const MeasureSeries& series, const Spin& spin, double tol)
{
	if(series.meta.measure != Measure::Echo || !series.meta.dk) {
		throw ContractError("reflection_check: needs a Loschmidt-echo series with known dk");
	}
	const double h = uniform_step(series);
	const double ref = reflection_reference(spin);
	const double dk = *series.meta.dk;
	// partner index p(i) = c - i
	const long c = aligned_steps(ref - dk - 2.0 * series.axis.front(), h, "reflection_check");
	PeriodReport r;
	r.kappa = ref;
	r.tolerance = tol;
	const long n = long(series.values.size());
	for(long i = 0; i < n; ++i) {
		const long p = c - i;
		if(p < i || p >= n || p < 0) continue;
		r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(series.values[i] - series.values[p]));
		++r.pairs;
	}
	if(r.pairs == 0) {
		throw AlignmentError("reflection_check: grid contains no mirrored pairs");
	}
	r.pass = r.max_abs_deviation <= tol;
	return r;
}

std::vector<double> time_autocorrelation(const std::vector<double>& x, int max_lag)
{
	const int n = int(x.size());
	if(max_lag < 1 || max_lag >= n - 1) {
		throw ContractError("time_autocorrelation: need 1 <= max_lag < n - 1");
	}
	std::vector<double> r;
	r.reserve(max_lag);
	for(int lag = 1; lag <= max_lag; ++lag) {
		const int len = n - lag;
		const double ma = std::accumulate(x.begin(), x.begin() + len, 0.0) / len;
		const double mb = std::accumulate(x.begin() + lag, x.end(), 0.0) / len;
		double sab = 0.0, saa = 0.0, sbb = 0.0, diff = 0.0;
		for(int i = 0; i < len; ++i) {
			const double a = x[i] - ma;
			const double b = x[i + lag] - mb;
			sab += a * b;
			saa += a * a;
			sbb += b * b;
			diff = std::max(diff, std::abs(x[i] - x[i + lag]));
		}
		if(saa <= 1e-300 || sbb <= 1e-300) {
			// flat segments: perfectly correlated only if they coincide
			r.push_back(diff <= 1e-12 ? 1.0 : 0.0);
		} else {
			r.push_back(sab / std::sqrt(saa * sbb));
		}
	}
	return r;
}

std::optional<int> detect_time_period(const std::vector<double>& values, int max_lag, double threshold)
{
	const auto r = time_autocorrelation(values, max_lag);
	for(int lag = 1; lag <= max_lag; ++lag) {
		if(r[lag - 1] >= threshold) return lag;
	}
	return std::nullopt;
}

double special_kick(const Spin& spin)
{
	return double(spin.twice_j()) * std::numbers::pi / 2.0;
}

SpecialKScan special_k_scan(const Spin& spin, double alpha, int m_max, double offset, std::uint64_t w_seed,
	const CoherentAngles& angles, int coarse_len)
{
	const FloquetParams p{spin, special_kick(spin) + offset, alpha};
	const ComplexMatrix u = build_floquet(p);
	const ComplexMatrix w = goe_sample(spin.dim(), w_seed);

	SpecialKScan out;
	out.otoc.meta.measure = Measure::Otoc;
	out.otoc.meta.spin = spin;
	out.otoc.meta.alpha = alpha;
	out.otoc.meta.k = p.k;
	out.otoc.meta.observable = OtocObservable::Goe;
	out.otoc.meta.w_seed = w_seed;
	out.otoc.axis_name = "m";
	out.otoc.values = otoc_time_series(u, w, m_max);
	for(int m = 0; m <= m_max; ++m) out.otoc.axis.push_back(m);

	out.ge = ge_series(p, angles, m_max);
	const CoarseGraining cg = default_coarse_graining(spin, coarse_len);
	out.oe = oe_series(p, angles, cg, m_max);
	out.oe.meta.coarse_len = coarse_len;
	return out;
}

} // namespace kicked_top
