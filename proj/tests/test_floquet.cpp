#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kicked_top/floquet.hpp"
#include "oracles.hpp"

using namespace kicked_top;
using std::numbers::pi;

TEST_CASE("Floquet operator matches the Taylor-exponential oracle")
{
	for(int tj : {1, 2, 3, 4, 7}) {
		for(double k : {0.0, 2.1, 7.3}) {
			for(double alpha : {pi / 4, pi / 2, 1.0}) {
				const auto u = build_floquet({Spin(tj), k, alpha});
				CHECK((u - oracle::floquet(tj, k, alpha)).cwiseAbs().maxCoeff() <= 1e-11);
				CHECK(unitarity_defect(u) <= 1e-12);
			}
		}
	}
}

TEST_CASE("kappa_j is 4 pi j for integer j and 2 pi j for half-integer j")
{
	CHECK(kappa_period(Spin(2)) == doctest::Approx(4 * pi));
	CHECK(kappa_period(Spin(4)) == doctest::Approx(8 * pi));
	CHECK(kappa_period(Spin(3)) == doctest::Approx(3 * pi));
	CHECK(kappa_period(Spin(1)) == doctest::Approx(pi));
}

TEST_CASE("the torsion prefactor at kappa_j is a scalar")
{
	// 1 for integer j, (1 - i)/sqrt(2) for half-integer j
	for(int tj = 1; tj <= 12; ++tj) {
		CAPTURE(tj);
		const Spin s(tj);
		const auto z = prefactor_scalar(s, kappa_period(s));
		REQUIRE(z.has_value());
		const Complex expected = s.is_integer() ? Complex(1, 0) : Complex(1, -1) / std::sqrt(2.0);
		CHECK(std::abs(*z - expected) <= 1e-12);
		const auto u = build_floquet({s, 2.1, pi / 4});
		const auto shifted = build_floquet({s, 2.1 + kappa_period(s), pi / 4});
		CHECK((shifted - *z * u).cwiseAbs().maxCoeff() <= 1e-12);
	}
	CHECK(std::abs(*prefactor_scalar(Spin(3), 2 * kappa_period(Spin(3))) - Complex(0, -1)) <= 1e-12);
	CHECK(std::abs(*prefactor_scalar(Spin(3), 4 * kappa_period(Spin(3))) - Complex(-1, 0)) <= 1e-12);
	CHECK(!prefactor_scalar(Spin(2), 1.0).has_value());
	CHECK(!prefactor_scalar(Spin(2), kappa_period(Spin(2)) / 2).has_value());
}

TEST_CASE("floquet_power equals repeated multiplication")
{
	const auto u = build_floquet({Spin(3), 1.7, 0.9});
	CHECK((floquet_power(u, 7) - oracle::matrix_power(u, 7)).cwiseAbs().maxCoeff() <= 1e-13);
	CHECK((floquet_power(u, 0) - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
	CHECK(unitarity_defect(floquet_power(u, 500)) <= 1e-9);
	CHECK_THROWS_AS((void)floquet_power(u, -1), ContractError);
}

TEST_CASE("quasienergies at j = 2, k = 2.1 repeat at k + 4 pi j and k + 8 pi j")
{
	const double table[] = {-1.2947, -0.2641, 0.6478, 0.7806, 1.16346};
	for(double shift : {0.0, 8 * pi, 16 * pi}) {
		const auto q = quasienergies(build_floquet({Spin(4), 2.1 + shift, pi / 4}));
		REQUIRE(q.phases.size() == 5);
		for(int i = 0; i < 5; ++i) CHECK(std::abs(q.phases[i] - table[i]) <= 2e-3);
	}
}

TEST_CASE("quasienergies at j = 3/2 follow the prefactor")
{
	const Spin s(3);
	const double base[] = {-0.5735, 0.7700, 1.1797, 1.4069};
	const double one_period[] = {-1.3589, -0.0153, 0.3943, 0.6215};
	const double two_periods[] = {-0.80071, -0.3910, -0.1638, 0.9972};
	const auto check = [&](double k, const double* expected) {
		const auto q = quasienergies(build_floquet({s, k, pi / 4}));
		REQUIRE(q.phases.size() == 4);
		for(int i = 0; i < 4; ++i) CHECK(std::abs(q.phases[i] - expected[i]) <= 2e-3);
	};
	check(2.1, base);
	check(2.1 + 3 * pi, one_period);
	check(2.1 + 6 * pi, two_periods);
	check(2.1 + 12 * pi, base);
}

TEST_CASE("principal branch keeps the full phase")
{
	const auto u = build_floquet({Spin(4), 2.1, pi / 4});
	const auto principal = quasienergies(u, PhaseBranch::Principal);
	const auto half = quasienergies(u, PhaseBranch::HalfTurn);
	REQUIRE(principal.phases.size() == 5);
	for(const double ph : principal.phases) {
		CHECK(ph > -pi);
		CHECK(ph <= pi);
	}
	// every principal phase folds onto one half-turn phase
	for(const double ph : principal.phases) {
		double folded = std::remainder(ph, pi);
		if(folded <= -pi / 2) folded += pi;
		bool found = false;
		for(const double h : half.phases) found = found || std::abs(h - folded) <= 1e-12;
		CHECK(found);
	}
}
