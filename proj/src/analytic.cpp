#include "kicked_top/analytic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace kicked_top
{

double chebyshev_t(int m, double x)
{
	if(m < 0) {
		throw ContractError("chebyshev_t: m must be >= 0");
	}
	if(m == 0) return 1.0;
	double prev = 1.0, cur = x;
	for(int n = 1; n < m; ++n) {
		const double next = 2.0 * x * cur - prev;
		prev = cur;
		cur = next;
	}
	return cur;
}

double chebyshev_u(int m, double x)
{
	if(m < -1) {
		throw ContractError("chebyshev_u: m must be >= -1");
	}
	if(m == -1) return 0.0;
	double prev = 0.0, cur = 1.0;
	for(int n = 0; n < m; ++n) {
		const double next = 2.0 * x * cur - prev;
		prev = cur;
		cur = next;
	}
	return cur;
}

BlockAmplitudes block_amplitudes(double k, int m, double q)
{
	if(m < 0) {
		throw ContractError("block_amplitudes: m must be >= 0");
	}
	const double chi = std::sin(k / q) / 2.0;
	const double u_prev = chebyshev_u(m - 1, chi);
	return {
		Complex(chebyshev_t(m, chi), 0.5 * u_prev * std::cos(k / q)),
		(std::sqrt(3.0) / 2.0) * u_prev * std::polar(1.0, k / q),
	};
}

double block_overlap(const BlockAmplitudes& a, const BlockAmplitudes& t)
{
	const Complex s = a.alpha * std::conj(t.alpha) + a.beta * std::conj(t.beta) + std::conj(a.beta) * t.beta
		+ std::conj(a.alpha) * t.alpha;
	return s.real();
}

double le_analytic_j32(double k, double k_prime, int m)
{
	const double s = block_overlap(block_amplitudes(k, m, 3.0), block_amplitudes(k_prime, m, 3.0));
	return s * s;
}

double le_analytic_j2(double k, double dk, int m)
{
	const double s = block_overlap(block_amplitudes(k, m, 2.0), block_amplitudes(k + dk, m, 2.0));
	// cos^2(m pi/2) and sin^2(m pi/2) are exact parity indicators
	const bool even = m % 2 == 0;
	const double odd_block = even ? 1.0 : std::cos(3.0 * dk / 8.0);
	const Complex tr = 1.0 + std::polar(1.0, m * dk / 4.0) * s + 2.0 * std::polar(1.0, 3.0 * m * dk / 8.0) * odd_block;
	return (5.0 + std::norm(tr)) / 30.0;
}

ComplexMatrix special_unitary_power(double k, int m)
{
	if(m < 0) {
		throw ContractError("special_unitary_power: m must be >= 0");
	}
	const Complex e = std::polar(1.0, -k / 2.0);
	const Complex em = std::pow(e, m);
	const double sign = m % 2 == 0 ? 1.0 : -1.0;
	// (e^m + (-e)^m)/2 and (e^m - (-e)^m)/2: one of them vanishes for every m
	const Complex a = m % 2 == 0 ? em : Complex(0.0);
	const Complex b = m % 2 == 0 ? Complex(0.0) : em;
	ComplexMatrix u = ComplexMatrix::Zero(3, 3);
	u(0, 0) = a;
	u(2, 2) = a;
	u(0, 2) = b;
	u(2, 0) = b;
	u(1, 1) = sign;
	return u;
}

RationalKick::RationalKick(long r, long s) : r_{r}, s_{s}
{
	if(s < 1) {
		throw ContractError("RationalKick: s must be >= 1");
	}
	if(std::gcd(r < 0 ? -r : r, s) != 1) {
		throw ContractError("RationalKick: r and s must be coprime, got " + std::to_string(r) + "/" + std::to_string(s));
	}
}

double RationalKick::value() const
{
	return double(r_) * std::numbers::pi / double(s_);
}

long time_period_alpha_pi(const RationalKick& kick)
{
	return kick.r() % 2 != 0 ? 4 * kick.s() : 2 * kick.s();
}

} // namespace kicked_top
