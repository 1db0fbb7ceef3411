#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kicked_top/measures.hpp"

namespace kicked_top
{

/// k_i = start + i * step, i = 0..count-1.
struct KGrid
{
	double start = 0.0;
	double step = 0.1;
	int count = 1;

	[[nodiscard]] double at(int i) const { return start + double(i) * step; }

	/// Points start, start+step, ... up to and including stop (to 1e-9 relative).
	static KGrid from_range(double start, double stop, double step);
	/// count points with step (stop - start) / divisions; stop is included when include_stop.
	static KGrid from_divisions(double start, double stop, int divisions, bool include_stop);
	/// [0, periods * kappa) with step kappa / n, n the multiple of `multiple` closest to kappa / approx_step.
	/// Every shift kappa / d for d dividing `multiple` then lands on grid points.
	static KGrid aligned(double kappa, double approx_step, int periods, int multiple);
};

struct SweepSpec
{
	Measure measure = Measure::Otoc;
	Spin spin{1};
	double alpha = 0.0;
	int m = 0;
	KGrid grid;

	std::optional<double> dk;
	std::optional<CoherentAngles> angles;
	std::optional<int> coarse_len;
	std::optional<std::string> partition; ///< "blocks" (default with coarse_len) or "sign"
	std::optional<OtocObservable> observable;
	std::optional<std::uint64_t> w_seed;
	std::uint64_t seed = 0;

	int threads = 0; ///< 0: hardware concurrency

	/// Throws SpecError if extras are missing or do not belong to the measure.
	void validate() const;
};

/// Evaluates f at every grid point, concurrently; results are in grid order for any thread count.
[[nodiscard]] std::vector<double> evaluate_grid(const KGrid& grid, int threads, const std::function<double(double)>& f);

/// The coarse graining a spec (or series metadata) asks for.
[[nodiscard]] CoarseGraining coarse_graining_for(const Spin& spin, const std::optional<int>& coarse_len,
	const std::optional<std::string>& partition);

/// The OTOC observable a spec asks for.
[[nodiscard]] ComplexMatrix otoc_observable_for(const Spin& spin, OtocObservable observable,
	const std::optional<std::uint64_t>& w_seed);

[[nodiscard]] MeasureSeries run_sweep(const SweepSpec& spec);

struct PeriodReport
{
	double kappa = 0.0;
	double max_abs_deviation = 0.0;
	double tolerance = 0.0;
	bool pass = false;
	int pairs = 0;
	std::optional<double> minimal_period;
};

/// Compares value(k) with value(k + kappa) at every aligned pair. Requires a uniform grid whose step
/// divides kappa to 1e-9 and whose half-open span covers 2 kappa; never interpolates.
[[nodiscard]] PeriodReport check_period(const MeasureSeries& series, double kappa, double tol);

/// Smallest passing candidate among kappa_j / n (n in divisors), else kappa_j. kappa_j itself failing
/// is an invariant violation and throws NumericalError.
[[nodiscard]] double minimal_period(const MeasureSeries& series, double kappa_j, const std::vector<int>& divisors,
	double tol);

/// Reference point for the echo reflection: 4 pi j (integer j) or 2 pi j (half-integer j).
[[nodiscard]] double reflection_reference(const Spin& spin);

/// For an echo series F(k, k + dk), checks F(k, k + dk) = F(ref - k, ref - k - dk). Because F is
/// symmetric in (k, k'), the partner of grid point k is the grid point ref - dk - k; the grid must
/// be symmetric about (ref - dk)/2 to 1e-9 steps.
[[nodiscard]] PeriodReport reflection_check(const MeasureSeries& series, const Spin& spin, double tol);

/// Pearson correlation of x[0..n-lag) with x[lag..n) for lag = 1..max_lag.
[[nodiscard]] std::vector<double> time_autocorrelation(const std::vector<double>& values, int max_lag);

/// Smallest lag whose autocorrelation reaches threshold.
[[nodiscard]] std::optional<int> detect_time_period(const std::vector<double>& values, int max_lag, double threshold);

struct SpecialKScan
{
	MeasureSeries otoc;
	MeasureSeries ge;
	MeasureSeries oe;
};

/// Time series of OTOC (seeded GOE W), GE and OE at k = N pi/2 + offset, N = 2j.
[[nodiscard]] SpecialKScan special_k_scan(const Spin& spin, double alpha, int m_max, double offset,
	std::uint64_t w_seed, const CoherentAngles& angles, int coarse_len);

/// k = N pi / 2 with N = 2j.
[[nodiscard]] double special_kick(const Spin& spin);

inline const std::vector<int> kDefaultDivisors{2, 3, 4, 6};
inline constexpr double kPeriodTol = 1e-9;
inline constexpr double kMinimalityThreshold = 1e-3;
inline constexpr double kAutocorrThreshold = 0.99;

} // namespace kicked_top
