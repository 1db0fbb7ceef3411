#include "kicked_top/measures.hpp"

#include <algorithm>
#include <cmath>

namespace kicked_top
{

std::string measure_name(Measure m)
{
	switch(m) {
	case Measure::Otoc: return "otoc";
	case Measure::Echo: return "le";
	case Measure::GenEntanglement: return "ge";
	case Measure::ObsEntropy: return "oe";
	}
	return "?";
}

Measure parse_measure(const std::string& name)
{
	if(name == "otoc") return Measure::Otoc;
	if(name == "le" || name == "echo") return Measure::Echo;
	if(name == "ge") return Measure::GenEntanglement;
	if(name == "oe") return Measure::ObsEntropy;
	throw SpecError("unknown measure '" + name + "' (expected otoc, le, ge, oe)");
}

CoarseGraining::CoarseGraining(std::vector<std::vector<int>> blocks, int dim) : blocks_{std::move(blocks)}, dim_{dim}
{
	std::vector<char> seen(dim > 0 ? dim : 0, 0);
	int covered = 0;
	for(const auto& block : blocks_) {
		if(block.empty()) {
			throw ContractError("CoarseGraining: blocks must be nonempty");
		}
		for(int idx : block) {
			if(idx < 0 || idx >= dim) {
				throw ContractError("CoarseGraining: index " + std::to_string(idx) + " outside [0, d)");
			}
			if(seen[idx]) {
				throw ContractError("CoarseGraining: blocks must be disjoint (index " + std::to_string(idx) + ")");
			}
			seen[idx] = 1;
			++covered;
		}
	}
	if(covered != dim) {
		throw ContractError("CoarseGraining: blocks must cover all d basis states");
	}
}

CoarseGraining default_coarse_graining(const Spin& spin, int block_len)
{
	const int d = spin.dim();
	if(block_len < 1 || block_len > d) {
		throw ContractError("default_coarse_graining: block length must be in [1, d]");
	}
	std::vector<std::vector<int>> blocks;
	for(int start = 0; start < d; start += block_len) {
		std::vector<int> block;
		for(int n = start; n < std::min(d, start + block_len); ++n) {
			block.push_back(n);
		}
		blocks.push_back(std::move(block));
	}
	return CoarseGraining(std::move(blocks), d);
}

CoarseGraining sign_coarse_graining(const Spin& spin)
{
	std::vector<int> pos, zero, neg;
	for(int n = 0; n < spin.dim(); ++n) {
		const int tm = spin.twice_m(n);
		(tm > 0 ? pos : tm == 0 ? zero : neg).push_back(n);
	}
	std::vector<std::vector<int>> blocks{pos};
	if(!zero.empty()) blocks.push_back(zero);
	blocks.push_back(neg);
	return CoarseGraining(std::move(blocks), spin.dim());
}

void MeasureSeries::validate() const
{
	if(axis.size() != values.size()) {
		throw ContractError("MeasureSeries: axis and values differ in length");
	}
	for(std::size_t i = 0; i < axis.size(); ++i) {
		if(!std::isfinite(values[i]) || !std::isfinite(axis[i])) {
			throw ContractError("MeasureSeries: non-finite entry at index " + std::to_string(i));
		}
		if(i > 0 && !(axis[i] > axis[i - 1])) {
			throw ContractError("MeasureSeries: axis must be strictly increasing");
		}
	}
}

void require_normalized(const StateVector& psi, const char* who)
{
	const double defect = std::abs(psi.squaredNorm() - 1.0);
	if(defect > kStructureTol) {
		throw ContractError(std::string(who) + ": state must be normalized to 1e-12, defect " + std::to_string(defect));
	}
}

// ---- OTOC -----------------------------------------------------------------

double otoc_from_evolved(const ComplexMatrix& w_m, const ComplexMatrix& w)
{
	const ComplexMatrix comm = w_m * w - w * w_m;
	// Tr(X^2) = sum_ij X_ij X_ji
	const Complex tr = comm.cwiseProduct(comm.transpose()).sum();
	const double value = -tr.real() / (2.0 * double(w.rows()));
	// residue is bounded relative to the size of the trace
	if(std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real()))) {
		throw NumericalError("otoc: imaginary trace residue " + std::to_string(tr.imag())
			+ " exceeds 1e-10; W(m) or W lost Hermiticity");
	}
	return value > 0.0 ? value : 0.0;
}

namespace
{

void require_hermitian_w(const ComplexMatrix& u, const ComplexMatrix& w)
{
	if(w.rows() != u.rows() || w.cols() != u.cols()) {
		throw ContractError("otoc: W dimension must match U");
	}
	if(hermiticity_defect(w) > kStructureTol) {
		throw ContractError("otoc: W must be Hermitian to 1e-12");
	}
}

} // namespace

double otoc(const ComplexMatrix& u, const ComplexMatrix& w, int m)
{
	require_hermitian_w(u, w);
	const ComplexMatrix um = floquet_power(u, m);
	const ComplexMatrix w_m = um * w * um.adjoint();
	return otoc_from_evolved(w_m, w);
}

double otoc(const FloquetParams& p, const ComplexMatrix& w, int m)
{
	return otoc(build_floquet(p), w, m);
}

double otoc_jz(const FloquetParams& p, int m)
{
	return otoc(p, jz_matrix(p.spin), m);
}

std::vector<double> otoc_time_series(const ComplexMatrix& u, const ComplexMatrix& w, int m_max)
{
	require_hermitian_w(u, w);
	if(m_max < 0) {
		throw ContractError("otoc_time_series: m_max must be >= 0");
	}
	std::vector<double> out;
	out.reserve(m_max + 1);
	ComplexMatrix w_m = w;
	for(int m = 0; m <= m_max; ++m) {
		if(m > 0) {
			w_m = u * w_m * u.adjoint();
			// keep W(m) exactly Hermitian so the trace stays real
			w_m = (0.5 * (w_m + w_m.adjoint())).eval();
		}
		out.push_back(otoc_from_evolved(w_m, w));
	}
	return out;
}

MeasureSeries otoc_series(const FloquetParams& p, const ComplexMatrix& w, int m_max)
{
	MeasureSeries s;
	s.meta.measure = Measure::Otoc;
	s.meta.spin = p.spin;
	s.meta.alpha = p.alpha;
	s.meta.k = p.k;
	s.axis_name = "m";
	s.values = otoc_time_series(build_floquet(p), w, m_max);
	for(int m = 0; m <= m_max; ++m) s.axis.push_back(m);
	return s;
}

// ---- Loschmidt echo -------------------------------------------------------

double echo_from_powers(const ComplexMatrix& u_m, const ComplexMatrix& u_prime_m)
{
	const double d = double(u_m.rows());
	// Tr(A^dagger B) = sum conj(A_ij) B_ij
	const double tr_sq = std::norm(u_prime_m.cwiseProduct(u_m.conjugate()).sum());
	const double f = (d + tr_sq) / (d * (d + 1.0));
	return std::clamp(f, 1.0 / (d + 1.0), 1.0);
}

double echo_trace_sq(const FloquetParams& p, double k_prime, int m)
{
	const ComplexMatrix rot = precession(p.spin, p.alpha);
	const ComplexMatrix um = floquet_power(build_floquet(p.spin, p.k, rot), m);
	const ComplexMatrix upm = floquet_power(build_floquet(p.spin, k_prime, rot), m);
	return std::norm(upm.cwiseProduct(um.conjugate()).sum());
}

double loschmidt_echo(const FloquetParams& p, double k_prime, int m)
{
	if(m < 0) {
		throw ContractError("loschmidt_echo: m must be >= 0");
	}
	// identical forward and reverse evolutions cancel: U^{-m} U^m = I
	if(k_prime == p.k || m == 0) {
		return 1.0;
	}
	const ComplexMatrix rot = precession(p.spin, p.alpha);
	const ComplexMatrix um = floquet_power(build_floquet(p.spin, p.k, rot), m);
	const ComplexMatrix upm = floquet_power(build_floquet(p.spin, k_prime, rot), m);
	return echo_from_powers(um, upm);
}

MeasureSeries le_series(const FloquetParams& p, double k_prime, int m_max)
{
	if(m_max < 0) {
		throw ContractError("le_series: m_max must be >= 0");
	}
	const ComplexMatrix rot = precession(p.spin, p.alpha);
	const ComplexMatrix u = build_floquet(p.spin, p.k, rot);
	const ComplexMatrix up = build_floquet(p.spin, k_prime, rot);
	ComplexMatrix um = ComplexMatrix::Identity(u.rows(), u.cols());
	ComplexMatrix upm = um;

	MeasureSeries s;
	s.meta.measure = Measure::Echo;
	s.meta.spin = p.spin;
	s.meta.alpha = p.alpha;
	s.meta.k = p.k;
	s.meta.dk = k_prime - p.k;
	s.axis_name = "m";
	for(int m = 0; m <= m_max; ++m) {
		if(m > 0) {
			um = u * um;
			upm = up * upm;
		}
		s.axis.push_back(m);
		s.values.push_back(k_prime == p.k ? 1.0 : echo_from_powers(um, upm));
	}
	if(unitarity_defect(um) > 1e-9 || unitarity_defect(upm) > 1e-9) {
		throw NumericalError("le_series: unitarity drift exceeds 1e-9");
	}
	return s;
}

// ---- generalized entanglement --------------------------------------------

double generalized_entanglement(const StateVector& psi, const AngularMomentum<double>& ops)
{
	require_normalized(psi, "generalized_entanglement");
	const double j = 0.5 * double(psi.size() - 1);
	const double ge = 1.0 - spin_expectation(ops, psi).squaredNorm() / (j * j);
	return std::clamp(ge, 0.0, 1.0);
}

double generalized_entanglement(const StateVector& psi, const Spin& spin)
{
	if(psi.size() != spin.dim()) {
		throw ContractError("generalized_entanglement: state dimension does not match spin");
	}
	return generalized_entanglement(psi, AngularMomentum<double>(spin));
}

double generalized_entanglement(const StateVector& psi, std::span<const ComplexMatrix> observables,
	double normalization)
{
	require_normalized(psi, "generalized_entanglement");
	double purity = 0.0;
	for(const auto& a : observables) {
		if(a.rows() != psi.size()) {
			throw ContractError("generalized_entanglement: observable dimension does not match state");
		}
		purity += std::norm(psi.dot(a * psi));
	}
	return 1.0 - normalization * purity;
}

MeasureSeries ge_series(const FloquetParams& p, const CoherentAngles& angles, int m_max)
{
	if(m_max < 0) {
		throw ContractError("ge_series: m_max must be >= 0");
	}
	const ComplexMatrix u = build_floquet(p);
	const AngularMomentum<double> ops(p.spin);
	StateVector psi = coherent_state(p.spin, angles);

	MeasureSeries s;
	s.meta.measure = Measure::GenEntanglement;
	s.meta.spin = p.spin;
	s.meta.alpha = p.alpha;
	s.meta.k = p.k;
	s.meta.angles = angles;
	s.axis_name = "m";
	for(int m = 0; m <= m_max; ++m) {
		if(m > 0) psi = u * psi;
		s.axis.push_back(m);
		s.values.push_back(generalized_entanglement(psi, ops));
	}
	return s;
}

// ---- observational entropy ------------------------------------------------

double observational_entropy(const StateVector& psi, const CoarseGraining& cg)
{
	require_normalized(psi, "observational_entropy");
	if(cg.dim() != psi.size()) {
		throw ContractError("observational_entropy: partition dimension does not match state");
	}
	double s = 0.0;
	for(const auto& block : cg.blocks()) {
		double p = 0.0;
		for(int n : block) {
			p += std::norm(psi(n));
		}
		if(p > 0.0) {
			s -= p * std::log(p / double(block.size()));
		}
	}
	return std::clamp(s, 0.0, std::log(double(psi.size())));
}

MeasureSeries oe_series(const FloquetParams& p, const CoherentAngles& angles, const CoarseGraining& cg, int m_max)
{
	if(m_max < 0) {
		throw ContractError("oe_series: m_max must be >= 0");
	}
	const ComplexMatrix u = build_floquet(p);
	StateVector psi = coherent_state(p.spin, angles);

	MeasureSeries s;
	s.meta.measure = Measure::ObsEntropy;
	s.meta.spin = p.spin;
	s.meta.alpha = p.alpha;
	s.meta.k = p.k;
	s.meta.angles = angles;
	s.axis_name = "m";
	for(int m = 0; m <= m_max; ++m) {
		// the coarse-grained measurement is virtual; psi is never collapsed
		if(m > 0) psi = u * psi;
		s.axis.push_back(m);
		s.values.push_back(observational_entropy(psi, cg));
	}
	return s;
}

} // namespace kicked_top
