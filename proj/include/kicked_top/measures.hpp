#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kicked_top/floquet.hpp"
#include "kicked_top/spinops.hpp"
#include "kicked_top/types.hpp"

namespace kicked_top
{

enum class Measure
{
	Otoc,
	Echo,
	GenEntanglement,
	ObsEntropy,
};

[[nodiscard]] std::string measure_name(Measure m);
[[nodiscard]] Measure parse_measure(const std::string& name);

/// Ordered partition of the J_z basis indices into macrostates.
class CoarseGraining
{
public:
	explicit CoarseGraining(std::vector<std::vector<int>> blocks, int dim);

	[[nodiscard]] const std::vector<std::vector<int>>& blocks() const { return blocks_; }
	[[nodiscard]] int dim() const { return dim_; }
	[[nodiscard]] std::size_t size() const { return blocks_.size(); }

private:
	std::vector<std::vector<int>> blocks_;
	int dim_;
};

/// Consecutive blocks of block_len over the m-descending basis; the last block holds the remainder.
[[nodiscard]] CoarseGraining default_coarse_graining(const Spin& spin, int block_len);

/// Blocks {m > 0}, {m = 0} (integer j only), {m < 0}.
[[nodiscard]] CoarseGraining sign_coarse_graining(const Spin& spin);

/// Which W the OTOC uses.
enum class OtocObservable
{
	Goe, ///< seeded GOE sample
	Jz,
};

/// Parameters that stay fixed across a series, plus the measure-specific extras.
struct SeriesMeta
{
	Measure measure = Measure::Otoc;
	Spin spin{1};
	double alpha = 0.0;
	std::optional<double> k;     ///< fixed k for time series
	std::optional<int> m;        ///< fixed time for k sweeps
	std::optional<double> dk;    ///< echo perturbation k' - k
	std::optional<CoherentAngles> angles;
	std::optional<int> coarse_len;
	std::optional<std::string> partition; ///< "blocks" or "sign"
	std::optional<OtocObservable> observable;
	std::optional<std::uint64_t> w_seed;
	std::uint64_t seed = 0;
};

struct MeasureSeries
{
	SeriesMeta meta;
	std::string axis_name; ///< "k" or "m"
	std::vector<double> axis;
	std::vector<double> values;

	/// Throws ContractError unless the axis is strictly increasing and values are finite and aligned.
	void validate() const;
};

// ---- OTOC -----------------------------------------------------------------

/// C = -(1/(2d)) Tr([W(m), W]^2) for already-evolved W(m).
[[nodiscard]] double otoc_from_evolved(const ComplexMatrix& w_m, const ComplexMatrix& w);

[[nodiscard]] double otoc(const ComplexMatrix& u, const ComplexMatrix& w, int m);
[[nodiscard]] double otoc(const FloquetParams& p, const ComplexMatrix& w, int m);
[[nodiscard]] double otoc_jz(const FloquetParams& p, int m);

/// C(m) for m = 0..m_max.
[[nodiscard]] std::vector<double> otoc_time_series(const ComplexMatrix& u, const ComplexMatrix& w, int m_max);
[[nodiscard]] MeasureSeries otoc_series(const FloquetParams& p, const ComplexMatrix& w, int m_max);

// ---- Loschmidt echo -------------------------------------------------------

/// F = (d + |Tr(U'^{-m} U^m)|^2) / (d(d+1)) for m-th powers already formed.
[[nodiscard]] double echo_from_powers(const ComplexMatrix& u_m, const ComplexMatrix& u_prime_m);

[[nodiscard]] double loschmidt_echo(const FloquetParams& p, double k_prime, int m);

/// F(m) for m = 0..m_max, powers accumulated one step at a time.
[[nodiscard]] MeasureSeries le_series(const FloquetParams& p, double k_prime, int m_max);

/// |Tr(U^{-m}(k') U^m(k))|^2, the raw overlap inside the echo.
[[nodiscard]] double echo_trace_sq(const FloquetParams& p, double k_prime, int m);

// ---- generalized entanglement --------------------------------------------

/// 1 - (1/j^2) |<J>|^2, clamped at 0 for roundoff.
[[nodiscard]] double generalized_entanglement(const StateVector& psi, const AngularMomentum<double>& ops);
[[nodiscard]] double generalized_entanglement(const StateVector& psi, const Spin& spin);

/// 1 - K sum_l |<psi|A_l|psi>|^2 for an arbitrary observable set.
[[nodiscard]] double generalized_entanglement(const StateVector& psi, std::span<const ComplexMatrix> observables,
	double normalization);

[[nodiscard]] MeasureSeries ge_series(const FloquetParams& p, const CoherentAngles& angles, int m_max);

// ---- observational entropy ------------------------------------------------

/// -sum_i p_i ln(p_i / V_i).
[[nodiscard]] double observational_entropy(const StateVector& psi, const CoarseGraining& cg);

[[nodiscard]] MeasureSeries oe_series(const FloquetParams& p, const CoherentAngles& angles, const CoarseGraining& cg,
	int m_max);

/// Throws ContractError if psi is not normalized to 1e-12.
void require_normalized(const StateVector& psi, const char* who);

} // namespace kicked_top
