#pragma once

#include <optional>
#include <vector>

#include "kicked_top/types.hpp"

namespace kicked_top
{

struct FloquetParams
{
	Spin spin;
	double k = 0.0;     ///< torsion (kick) strength
	double alpha = 0.0; ///< precession angle about y
};

/// Diagonal of exp(-i k J_z^2 / (2j)).
[[nodiscard]] StateVector torsion_phases(const Spin& spin, double k);

/// exp(-i alpha J_y).
[[nodiscard]] ComplexMatrix precession(const Spin& spin, double alpha);

/// U(k) = exp(-i k J_z^2/(2j)) exp(-i alpha J_y).
[[nodiscard]] ComplexMatrix build_floquet(const FloquetParams& p);

/// Same, reusing a precomputed precession matrix (sweeps at fixed alpha).
[[nodiscard]] ComplexMatrix build_floquet(const Spin& spin, double k, const ComplexMatrix& rotation);

/// U^m by repeated multiplication. Unitarity is re-checked every 100 steps and at the end;
/// drift beyond 1e-9 throws NumericalError.
[[nodiscard]] ComplexMatrix floquet_power(const ComplexMatrix& u, int m);

/// Fundamental k-period: 4 pi j for integer j, 2 pi j for half-integer j.
[[nodiscard]] double kappa_period(const Spin& spin);

/// The common value z of exp(-i kappa m^2/(2j)) over all m, if the prefactor is z * I.
[[nodiscard]] std::optional<Complex> prefactor_scalar(const Spin& spin, double kappa);

enum class PhaseBranch
{
	/// arg(lambda) folded into (-pi/2, pi/2], i.e. atan(Im/Re); quasienergies modulo pi.
	HalfTurn,
	/// Principal arg(lambda) in (-pi, pi].
	Principal,
};

struct QuasiEnergySpectrum
{
	std::vector<double> phases; ///< ascending
	PhaseBranch branch = PhaseBranch::HalfTurn;
};

[[nodiscard]] QuasiEnergySpectrum quasienergies(const ComplexMatrix& u, PhaseBranch branch = PhaseBranch::HalfTurn);

} // namespace kicked_top
