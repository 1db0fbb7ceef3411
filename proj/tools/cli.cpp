#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kicked_top/analytic.hpp"
#include "kicked_top/classical.hpp"
#include "kicked_top/floquet.hpp"
#include "kicked_top/literals.hpp"
#include "kicked_top/measures.hpp"
#include "kicked_top/series_io.hpp"
#include "kicked_top/sweep.hpp"

namespace kicked_top::cli
{

namespace
{

// Raw flag values; literals are parsed after CLI11 is done so errors can name the flag.
struct RunConfig
{
	std::string spin = "1";
	std::string alpha = "pi/4";
	std::optional<std::string> k, k_prime, dk;
	std::optional<int> m, m_max;
	std::optional<std::string> k_start, k_stop, k_step;
	std::optional<int> k_divisions;
	std::optional<std::string> theta, phi; // default pi/4 where a coherent state is needed
	std::optional<int> coarse_len;
	std::optional<std::string> partition;
	std::optional<std::uint64_t> w_seed;
	std::optional<std::string> observable; // default goe
	std::uint64_t seed = 0;
	std::string measure;
	std::string out_path;
	bool deterministic = false;
	int threads = 0;

	std::string branch = "halfturn";
	int n_init = 20, n_iter = 500;
	std::string coords = "xyz";
	std::string input;
	std::optional<std::string> kappa;
	double tol = kPeriodTol;
	std::optional<std::string> divisors;
	std::string offset = "0";
};

class Output
{
public:
	Output(const RunConfig& cfg, std::ostream& out) : out_{&out}
	{
		if(cfg.out_path.empty()) return;
		std::filesystem::path path(cfg.out_path);
		if(path.is_relative()) {
			if(const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
				path = std::filesystem::path(dir) / path;
			}
		}
		file_.open(path);
		if(!file_) {
			throw SpecError("--out: cannot open '" + path.string() + "' for writing");
		}
		out_ = &file_;
	}

	std::ostream& stream() { return *out_; }

private:
	std::ofstream file_;
	std::ostream* out_;
};

// Report subcommands take the spin from their input series and have no alpha of their own.
CommentList run_comments(const RunConfig& cfg, const std::string& subcommand, const Spin* report_spin = nullptr)
{
	CommentList c;
	c.emplace_back("program", "kickedtop " + subcommand);
	if(report_spin) {
		c.emplace_back("spin", format_spin(*report_spin));
	} else {
		c.emplace_back("spin", cfg.spin);
		c.emplace_back("alpha_literal", cfg.alpha);
	}
	if(!cfg.deterministic) {
		const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
		std::tm tm{};
		gmtime_r(&now, &tm);
		std::ostringstream ts;
		ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
		c.emplace_back("generated", ts.str());
	}
	return c;
}

double angle_flag(const std::optional<std::string>& v, const char* flag)
{
	if(!v) throw SpecError(std::string("missing required flag ") + flag);
	return parse_angle(*v);
}

bool grid_requested(const RunConfig& cfg)
{
	return cfg.k_start || cfg.k_stop || cfg.k_step || cfg.k_divisions;
}

KGrid grid_from(const RunConfig& cfg)
{
	const double start = cfg.k_start ? parse_angle(*cfg.k_start) : 0.0;
	if(!cfg.k_stop) throw SpecError("k sweep needs --k-stop");
	const double stop = parse_angle(*cfg.k_stop);
	if(cfg.k_divisions) {
		if(cfg.k_step) throw SpecError("give either --k-step or --k-divisions, not both");
		return KGrid::from_divisions(start, stop, *cfg.k_divisions, true);
	}
	if(!cfg.k_step) throw SpecError("k sweep needs --k-step or --k-divisions");
	return KGrid::from_range(start, stop, parse_angle(*cfg.k_step));
}

CoherentAngles coherent_angles(const RunConfig& cfg)
{
	return {parse_angle(cfg.theta.value_or("pi/4")), parse_angle(cfg.phi.value_or("pi/4"))};
}

OtocObservable observable_from(const RunConfig& cfg)
{
	const std::string name = cfg.observable.value_or("goe");
	if(name == "jz") return OtocObservable::Jz;
	if(name == "goe") return OtocObservable::Goe;
	throw SpecError("--observable must be 'goe' or 'jz'");
}

std::optional<double> echo_dk(const RunConfig& cfg, std::optional<double> k)
{
	if(cfg.dk && cfg.k_prime) throw SpecError("give either --dk or --k-prime, not both");
	if(cfg.dk) return parse_angle(*cfg.dk);
	if(cfg.k_prime) {
		if(!k) throw SpecError("--k-prime needs --k; use --dk for sweeps");
		return parse_angle(*cfg.k_prime) - *k;
	}
	return std::nullopt;
}

// Series subcommands: a k sweep at fixed --m, or a time series at fixed --k up to --m-max.
int run_series(const RunConfig& cfg, Measure measure, const std::string& name, std::ostream& out)
{
	const Spin spin = parse_spin(cfg.spin);
	const double alpha = parse_angle(cfg.alpha);
	const std::optional<CoherentAngles> angles =
		(measure == Measure::GenEntanglement || measure == Measure::ObsEntropy)
		? std::optional<CoherentAngles>(coherent_angles(cfg))
		: std::nullopt;

	MeasureSeries series;
	if(grid_requested(cfg)) {
		if(!cfg.m) throw SpecError("k sweep needs --m");
		if(cfg.k) throw SpecError("--k conflicts with a k sweep");
		SweepSpec spec;
		spec.measure = measure;
		spec.spin = spin;
		spec.alpha = alpha;
		spec.m = *cfg.m;
		spec.grid = grid_from(cfg);
		spec.seed = cfg.seed;
		spec.threads = cfg.threads;
		// extras pass through as given; SweepSpec::validate rejects the ones that do not apply
		spec.dk = echo_dk(cfg, std::nullopt);
		spec.w_seed = cfg.w_seed;
		if(cfg.observable || measure == Measure::Otoc) spec.observable = observable_from(cfg);
		if(angles) spec.angles = angles;
		else if(cfg.theta || cfg.phi) spec.angles = coherent_angles(cfg);
		spec.partition = cfg.partition;
		spec.coarse_len = cfg.coarse_len;
		if(measure == Measure::ObsEntropy && !cfg.coarse_len && cfg.partition.value_or("blocks") != "sign") {
			spec.coarse_len = 2;
		}
		series = run_sweep(spec);
	} else {
		if(!cfg.m_max) throw SpecError("time series needs --m-max (or give a k grid for a sweep)");
		const FloquetParams p{spin, angle_flag(cfg.k, "--k"), alpha};
		switch(measure) {
		case Measure::Otoc: {
			const OtocObservable obs = observable_from(cfg);
			if(obs == OtocObservable::Goe && !cfg.w_seed) throw SpecError("otoc with a GOE observable needs --w-seed");
			series = otoc_series(p, otoc_observable_for(spin, obs, cfg.w_seed), *cfg.m_max);
			series.meta.observable = obs;
			if(obs == OtocObservable::Goe) series.meta.w_seed = cfg.w_seed;
			break;
		}
		case Measure::Echo: {
			const auto dk = echo_dk(cfg, p.k);
			if(!dk) throw SpecError("le needs --dk or --k-prime");
			series = le_series(p, p.k + *dk, *cfg.m_max);
			series.meta.dk = dk;
			break;
		}
		case Measure::GenEntanglement:
			series = ge_series(p, *angles, *cfg.m_max);
			break;
		case Measure::ObsEntropy: {
			const auto len = cfg.partition.value_or("blocks") == "sign" ? cfg.coarse_len : cfg.coarse_len.value_or(2);
			series = oe_series(p, *angles, coarse_graining_for(spin, len, cfg.partition), *cfg.m_max);
			series.meta.coarse_len = len;
			series.meta.partition = cfg.partition;
			break;
		}
		}
		series.meta.seed = cfg.seed;
	}
	Output o(cfg, out);
	write_series_csv(o.stream(), series, run_comments(cfg, name));
	return kExitOk;
}

int run_quasi(const RunConfig& cfg, std::ostream& out)
{
	const Spin spin = parse_spin(cfg.spin);
	const FloquetParams p{spin, angle_flag(cfg.k, "--k"), parse_angle(cfg.alpha)};
	PhaseBranch branch = PhaseBranch::HalfTurn;
	if(cfg.branch == "principal") branch = PhaseBranch::Principal;
	else if(cfg.branch != "halfturn") throw SpecError("--branch must be 'halfturn' or 'principal'");
	const auto spec = quasienergies(build_floquet(p), branch);

	Output o(cfg, out);
	auto c = run_comments(cfg, "quasi");
	c.emplace_back("twice_j", std::to_string(spin.twice_j()));
	c.emplace_back("k", format_value(p.k));
	c.emplace_back("alpha", format_value(p.alpha));
	c.emplace_back("branch", cfg.branch);
	write_comments(o.stream(), c);
	o.stream() << "phase_index,phase\n";
	for(std::size_t i = 0; i < spec.phases.size(); ++i) {
		o.stream() << i << ',' << format_value(spec.phases[i]) << '\n';
	}
	return kExitOk;
}

int run_classical(const RunConfig& cfg, std::ostream& out)
{
	const double k = angle_flag(cfg.k, "--k");
	const double alpha = parse_angle(cfg.alpha);
	if(cfg.coords != "xyz" && cfg.coords != "angles") throw SpecError("--coords must be 'xyz' or 'angles'");
	const auto points = phase_portrait(k, alpha, cfg.n_init, cfg.n_iter, cfg.seed);

	Output o(cfg, out);
	auto c = run_comments(cfg, "classical");
	c.emplace_back("k", format_value(k));
	c.emplace_back("alpha", format_value(alpha));
	c.emplace_back("n_init", std::to_string(cfg.n_init));
	c.emplace_back("n_iter", std::to_string(cfg.n_iter));
	c.emplace_back("seed", std::to_string(cfg.seed));
	write_comments(o.stream(), c);
	if(cfg.coords == "xyz") {
		o.stream() << "X,Y,Z\n";
		for(const auto& p : points) {
			o.stream() << format_value(p.x()) << ',' << format_value(p.y()) << ',' << format_value(p.z()) << '\n';
		}
	} else {
		o.stream() << "theta,phi\n";
		for(const auto& p : points) {
			o.stream() << format_value(p.theta()) << ',' << format_value(p.phi()) << '\n';
		}
	}
	return kExitOk;
}

MeasureSeries load_series(const std::string& path)
{
	if(path.empty()) throw SpecError("missing required flag --input");
	std::ifstream in(path);
	if(!in) throw SpecError("--input: cannot open '" + path + "'");
	return read_series_csv(in);
}

std::vector<int> parse_divisors(const std::string& text)
{
	std::vector<int> out;
	std::stringstream ss(text);
	std::string item;
	while(std::getline(ss, item, ',')) {
		try {
			out.push_back(std::stoi(item));
		} catch(const std::exception&) {
			throw SpecError("--divisors must be a comma-separated list of integers");
		}
	}
	return out;
}

void write_report(std::ostream& os, const PeriodReport& r)
{
	os << "kappa,max_abs_deviation,tolerance,pairs,verdict";
	if(r.minimal_period) os << ",minimal_period";
	os << '\n'
	   << format_value(r.kappa) << ',' << format_value(r.max_abs_deviation) << ',' << format_value(r.tolerance) << ','
	   << r.pairs << ',' << (r.pass ? "pass" : "fail");
	if(r.minimal_period) os << ',' << format_value(*r.minimal_period);
	os << '\n';
}

int run_check_period(const RunConfig& cfg, std::ostream& out)
{
	const MeasureSeries s = load_series(cfg.input);
	const double kappa = cfg.kappa ? parse_angle(*cfg.kappa) : kappa_period(s.meta.spin);
	PeriodReport r = check_period(s, kappa, cfg.tol);
	if(cfg.divisors) {
		r.minimal_period = minimal_period(s, kappa, parse_divisors(*cfg.divisors), cfg.tol);
	}
	Output o(cfg, out);
	auto c = run_comments(cfg, "check-period", &s.meta.spin);
	c.emplace_back("input", cfg.input);
	write_comments(o.stream(), c);
	write_report(o.stream(), r);
	return kExitOk;
}

int run_reflection(const RunConfig& cfg, std::ostream& out)
{
	const MeasureSeries s = load_series(cfg.input);
	const PeriodReport r = reflection_check(s, s.meta.spin, cfg.tol);
	Output o(cfg, out);
	auto c = run_comments(cfg, "reflection", &s.meta.spin);
	c.emplace_back("input", cfg.input);
	write_comments(o.stream(), c);
	write_report(o.stream(), r);
	return kExitOk;
}

int run_special_k(const RunConfig& cfg, std::ostream& out)
{
	const Spin spin = parse_spin(cfg.spin);
	const double alpha = parse_angle(cfg.alpha);
	const double offset = parse_angle(cfg.offset);
	const int m_max = cfg.m_max.value_or(200);
	const CoherentAngles angles = coherent_angles(cfg);
	const int len = cfg.coarse_len.value_or(2);
	const auto scan = special_k_scan(spin, alpha, m_max, offset, cfg.w_seed.value_or(0), angles, len);

	Output o(cfg, out);
	auto c = run_comments(cfg, "special-k");
	c.emplace_back("twice_j", std::to_string(spin.twice_j()));
	c.emplace_back("alpha", format_value(alpha));
	c.emplace_back("k", format_value(special_kick(spin) + offset));
	c.emplace_back("offset", format_value(offset));
	c.emplace_back("w_seed", std::to_string(cfg.w_seed.value_or(0)));
	c.emplace_back("theta", format_value(angles.theta));
	c.emplace_back("phi", format_value(angles.phi));
	c.emplace_back("coarse_len", std::to_string(len));
	const int max_lag = std::max(1, m_max / 2);
	if(m_max >= 3) {
		const auto tag = [&](const char* name, const MeasureSeries& s) {
			const auto r = time_autocorrelation(s.values, std::min(max_lag, int(s.values.size()) - 2));
			const auto best = std::max_element(r.begin(), r.end());
			std::ostringstream v;
			v << format_value(*best) << " at lag " << (best - r.begin()) + 1;
			c.emplace_back(std::string("max_autocorrelation_") + name, v.str());
		};
		tag("otoc", scan.otoc);
		tag("ge", scan.ge);
		tag("oe", scan.oe);
	}
	write_comments(o.stream(), c);
	o.stream() << "m,otoc,ge,oe\n";
	for(std::size_t i = 0; i < scan.otoc.values.size(); ++i) {
		o.stream() << i << ',' << format_value(scan.otoc.values[i]) << ',' << format_value(scan.ge.values[i]) << ','
				   << format_value(scan.oe.values[i]) << '\n';
	}
	return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& cfg)
{
	sub->add_option("--out", cfg.out_path, "output CSV path (default: standard output)");
	sub->add_flag("--deterministic", cfg.deterministic, "omit the timestamp comment");
}

void add_spin_alpha(CLI::App* sub, RunConfig& cfg)
{
	sub->add_option("--j", cfg.spin, "spin, e.g. 2 or 3/2")->required();
	sub->add_option("--alpha", cfg.alpha, "precession angle literal, e.g. pi/4")->capture_default_str();
}

void add_series_options(CLI::App* sub, RunConfig& cfg, Measure measure)
{
	add_spin_alpha(sub, cfg);
	sub->add_option("--k", cfg.k, "kick strength for a time series");
	sub->add_option("--m", cfg.m, "time step for a k sweep");
	sub->add_option("--m-max", cfg.m_max, "last time step of a time series");
	sub->add_option("--k-start", cfg.k_start, "first k of the sweep (default 0)");
	sub->add_option("--k-stop", cfg.k_stop, "last k of the sweep (inclusive)");
	sub->add_option("--k-step", cfg.k_step, "k step");
	sub->add_option("--k-divisions", cfg.k_divisions, "split [k-start, k-stop] into this many steps");
	sub->add_option("--seed", cfg.seed, "run seed recorded in the metadata");
	sub->add_option("--threads", cfg.threads, "worker threads for sweeps (0: all cores)");
	if(measure == Measure::Otoc) {
		sub->add_option("--w-seed", cfg.w_seed, "seed of the GOE observable W");
		sub->add_option("--observable", cfg.observable, "goe (default) or jz");
	}
	if(measure == Measure::Echo) {
		sub->add_option("--dk", cfg.dk, "perturbation k' - k");
		sub->add_option("--k-prime", cfg.k_prime, "perturbed kick strength (time series)");
	}
	if(measure == Measure::GenEntanglement || measure == Measure::ObsEntropy) {
		sub->add_option("--theta", cfg.theta, "coherent state polar angle (default pi/4)");
		sub->add_option("--phi", cfg.phi, "coherent state azimuth (default pi/4)");
	}
	if(measure == Measure::ObsEntropy) {
		sub->add_option("--coarse-len", cfg.coarse_len, "coarse-graining block length (default 2)");
		sub->add_option("--partition", cfg.partition, "blocks or sign");
	}
	add_common(sub, cfg);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	RunConfig cfg;
	CLI::App app{"Quantum kicked top: Floquet dynamics, chaos measures and their k-periodicity"};
	app.name("kickedtop");
	app.require_subcommand(1, 1);

	struct SeriesCommand
	{
		const char* name;
		Measure measure;
		const char* help;
	};
	const SeriesCommand series_commands[] = {
		{"otoc", Measure::Otoc, "out-of-time-ordered correlator"},
		{"echo", Measure::Echo, "state-independent Loschmidt echo"},
		{"ge", Measure::GenEntanglement, "su(2) generalized entanglement of a coherent state"},
		{"oe", Measure::ObsEntropy, "observational entropy of a coherent state"},
	};
	std::vector<std::pair<CLI::App*, Measure>> series_subs;
	for(const auto& sc : series_commands) {
		auto* sub = app.add_subcommand(sc.name, sc.help);
		add_series_options(sub, cfg, sc.measure);
		series_subs.emplace_back(sub, sc.measure);
	}

	// sweep-k takes every extra; SweepSpec validation rejects the ones that do not apply
	auto* sweep = app.add_subcommand("sweep-k", "k sweep of any measure at fixed m");
	add_spin_alpha(sweep, cfg);
	sweep->add_option("--measure", cfg.measure, "otoc, le, ge or oe")->required();
	sweep->add_option("--m", cfg.m, "time step")->required();
	sweep->add_option("--k-start", cfg.k_start, "first k (default 0)");
	sweep->add_option("--k-stop", cfg.k_stop, "last k (inclusive)")->required();
	sweep->add_option("--k-step", cfg.k_step, "k step");
	sweep->add_option("--k-divisions", cfg.k_divisions, "split [k-start, k-stop] into this many steps");
	sweep->add_option("--dk", cfg.dk, "echo perturbation k' - k");
	sweep->add_option("--theta", cfg.theta, "coherent state polar angle (default pi/4)");
	sweep->add_option("--phi", cfg.phi, "coherent state azimuth (default pi/4)");
	sweep->add_option("--coarse-len", cfg.coarse_len, "OE block length (default 2)");
	sweep->add_option("--partition", cfg.partition, "OE partition: blocks or sign");
	sweep->add_option("--w-seed", cfg.w_seed, "seed of the GOE observable W");
	sweep->add_option("--observable", cfg.observable, "goe (default) or jz");
	sweep->add_option("--seed", cfg.seed, "run seed recorded in the metadata");
	sweep->add_option("--threads", cfg.threads, "worker threads (0: all cores)");
	add_common(sweep, cfg);

	auto* quasi = app.add_subcommand("quasi", "quasienergies of U(k)");
	add_spin_alpha(quasi, cfg);
	quasi->add_option("--k", cfg.k, "kick strength")->required();
	quasi->add_option("--branch", cfg.branch, "halfturn: (-pi/2, pi/2]; principal: (-pi, pi]")->capture_default_str();
	add_common(quasi, cfg);

	auto* classical = app.add_subcommand("classical", "classical kicked-top phase portrait");
	classical->add_option("--k", cfg.k, "kick strength")->required();
	classical->add_option("--alpha", cfg.alpha, "precession angle literal")->capture_default_str();
	classical->add_option("--n-init", cfg.n_init, "number of random initial points")->capture_default_str();
	classical->add_option("--n-iter", cfg.n_iter, "map iterations per initial point")->capture_default_str();
	classical->add_option("--seed", cfg.seed, "seed of the initial points")->capture_default_str();
	classical->add_option("--coords", cfg.coords, "xyz or angles")->capture_default_str();
	add_common(classical, cfg);

	auto* check = app.add_subcommand("check-period", "test a series for k-periodicity");
	check->add_option("--input", cfg.input, "series CSV")->required();
	check->add_option("--kappa", cfg.kappa, "candidate period literal (default: kappa_j of the series spin)");
	check->add_option("--tol", cfg.tol, "max allowed |M(k) - M(k + kappa)|")->capture_default_str();
	check->add_option("--divisors", cfg.divisors, "also search kappa/n for these n, e.g. 2,3,4,6");
	add_common(check, cfg);

	auto* reflection = app.add_subcommand("reflection", "test an echo series for reflection symmetry");
	reflection->add_option("--input", cfg.input, "echo series CSV")->required();
	reflection->add_option("--tol", cfg.tol, "max allowed deviation between mirror pairs")->capture_default_str();
	add_common(reflection, cfg);

	auto* special = app.add_subcommand("special-k", "OTOC, GE and OE time series at k = 2j pi/2 + offset");
	add_spin_alpha(special, cfg);
	special->add_option("--m-max", cfg.m_max, "last time step (default 200)");
	special->add_option("--offset", cfg.offset, "added to k = 2j pi/2")->capture_default_str();
	special->add_option("--w-seed", cfg.w_seed, "seed of the GOE observable W");
	special->add_option("--theta", cfg.theta, "coherent state polar angle (default pi/4)");
	special->add_option("--phi", cfg.phi, "coherent state azimuth (default pi/4)");
	special->add_option("--coarse-len", cfg.coarse_len, "OE block length (default 2)");
	add_common(special, cfg);

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch(const CLI::CallForHelp&) {
		out << app.help();
		return kExitOk;
	} catch(const CLI::CallForAllHelp&) {
		out << app.help("", CLI::AppFormatMode::All);
		return kExitOk;
	} catch(const CLI::ParseError& e) {
		err << "error: " << e.what() << '\n';
		return kExitUsage;
	}

	try {
		for(const auto& [sub, measure] : series_subs) {
			if(sub->parsed()) return run_series(cfg, measure, sub->get_name(), out);
		}
		if(sweep->parsed()) return run_series(cfg, parse_measure(cfg.measure), "sweep-k", out);
		if(quasi->parsed()) return run_quasi(cfg, out);
		if(classical->parsed()) return run_classical(cfg, out);
		if(check->parsed()) return run_check_period(cfg, out);
		if(reflection->parsed()) return run_reflection(cfg, out);
		if(special->parsed()) return run_special_k(cfg, out);
	} catch(const SpecError& e) {
		err << "error: " << e.what() << '\n';
		return kExitUsage;
	} catch(const ContractError& e) {
		err << "error: contract violated: " << e.what() << '\n';
		return kExitNumerical;
	} catch(const NumericalError& e) {
		err << "error: numerical contract violated: " << e.what() << '\n';
		return kExitNumerical;
	}
	err << "error: no subcommand\n";
	return kExitUsage;
}

} // namespace kicked_top::cli
