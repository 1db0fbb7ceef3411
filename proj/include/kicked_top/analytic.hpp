#pragma once

#include "kicked_top/types.hpp"

// Closed-form oracles at special parameter values, independent of the numeric Floquet path.

namespace kicked_top
{

/// T_m by the three-term recurrence; m >= 0.
[[nodiscard]] double chebyshev_t(int m, double x);
/// U_m by the three-term recurrence; m >= -1, U_{-1} = 0.
[[nodiscard]] double chebyshev_u(int m, double x);

/// Amplitudes of the 2x2 blocks of U^m at alpha = pi/2:
///   alpha_m = T_m(chi) + (i/2) U_{m-1}(chi) cos(k/q),  beta_m = (sqrt3/2) U_{m-1}(chi) e^{ik/q},
/// chi = sin(k/q)/2, with q = 3 for j = 3/2 and q = 2 for j = 2.
struct BlockAmplitudes
{
	Complex alpha;
	Complex beta;
};

[[nodiscard]] BlockAmplitudes block_amplitudes(double k, int m, double q);

/// alpha a~* + beta b~* + beta* b~ + alpha* a~ (real by construction).
[[nodiscard]] double block_overlap(const BlockAmplitudes& a, const BlockAmplitudes& tilde);

/// |alpha a~* + beta b~* + beta* b~ + alpha* a~|^2 at j = 3/2, alpha = pi/2, tildes built from k'.
/// Equals |Tr(U^{-m}(k') U^m(k))|^2 / 4; value 4 at perfect overlap.
[[nodiscard]] double le_analytic_j32(double k, double k_prime, int m);

/// Echo at j = 2, alpha = pi/2, k' = k + dk:
///   F = (1/30)(5 + |1 + e^{i m dk/4} S + 2 e^{3 i m dk/8} (cos^2(m pi/2) + sin^2(m pi/2) cos(3 dk/8))|^2),
/// S the block overlap with q = 2.
[[nodiscard]] double le_analytic_j2(double k, double dk, int m);

/// U^m(k) at j = 1, alpha = pi: diagonal (alpha_m, (-1)^m, alpha_m) plus anti-diagonal corners beta_m.
[[nodiscard]] ComplexMatrix special_unitary_power(double k, int m);

/// k = r pi / s with gcd(|r|, s) = 1, s >= 1.
class RationalKick
{
public:
	RationalKick(long r, long s);

	[[nodiscard]] long r() const { return r_; }
	[[nodiscard]] long s() const { return s_; }
	[[nodiscard]] double value() const;

private:
	long r_;
	long s_;
};

/// Time period of U^m at j = 1, alpha = pi: 4s for odd r, 2s for even r.
[[nodiscard]] long time_period_alpha_pi(const RationalKick& kick);

} // namespace kicked_top
