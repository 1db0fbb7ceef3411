#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kicked_top/sweep.hpp"

using namespace kicked_top;
using std::numbers::pi;

namespace
{

SweepSpec otoc_spec(int tj, int m, const KGrid& grid)
{
	SweepSpec s;
	s.measure = Measure::Otoc;
	s.spin = Spin(tj);
	s.alpha = pi / 4;
	s.m = m;
	s.grid = grid;
	s.w_seed = 5;
	return s;
}

} // namespace

TEST_CASE("k grids")
{
	const auto g = KGrid::from_range(0.0, 1.0, 0.1);
	CHECK(g.count == 11);
	CHECK(g.at(10) == doctest::Approx(1.0));
	const auto d = KGrid::from_divisions(0.0, 2.0, 4, false);
	CHECK(d.count == 4);
	CHECK(d.step == 0.5);
	const auto a = KGrid::aligned(4 * pi, 0.1, 2, 12);
	CHECK(a.count % 24 == 0);
	CHECK(std::abs(a.step - 0.1) < 0.01);
	// kappa / 6 is an integer number of steps
	const double steps = (4 * pi / 6) / a.step;
	CHECK(std::abs(steps - std::round(steps)) < 1e-9);
	CHECK_THROWS_AS((void)KGrid::from_range(1.0, 0.0, 0.1), SpecError);
}

TEST_CASE("sweep results do not depend on the thread count")
{
	const KGrid grid{0.0, 0.37, 40};
	auto one = otoc_spec(4, 7, grid);
	one.threads = 1;
	auto four = one;
	four.threads = 4;
	const auto a = run_sweep(one);
	const auto b = run_sweep(four);
	REQUIRE(a.values.size() == 40);
	for(int i = 0; i < 40; ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("sweep validation names the offending extra")
{
	auto s = otoc_spec(2, 1, {0.0, 0.1, 3});
	s.dk = 0.1;
	CHECK_THROWS_WITH_AS(s.validate(), doctest::Contains("dk"), SpecError);
	SweepSpec le;
	le.measure = Measure::Echo;
	le.grid = {0.0, 0.1, 3};
	CHECK_THROWS_AS(le.validate(), SpecError);
	le.dk = 0.1;
	le.validate();
	SweepSpec oe;
	oe.measure = Measure::ObsEntropy;
	oe.grid = {0.0, 0.1, 3};
	oe.angles = CoherentAngles{1.0, 1.0};
	CHECK_THROWS_AS(oe.validate(), SpecError);
	oe.partition = "sign";
	oe.validate();
	auto no_seed = otoc_spec(2, 1, {0.0, 0.1, 3});
	no_seed.w_seed.reset();
	CHECK_THROWS_AS(no_seed.validate(), SpecError);
}

TEST_CASE("evaluate_grid propagates the first failure")
{
	const KGrid grid{0.0, 1.0, 10};
	CHECK_THROWS_AS((void)evaluate_grid(grid, 3,
						[](double k) -> double {
							if(k > 4.5) throw NumericalError("boom");
							return k;
						}),
		NumericalError);
}

TEST_CASE("check_period on a synthetic series")
{
	MeasureSeries s;
	s.meta.spin = Spin(2);
	const double kappa = 2.0;
	for(int i = 0; i < 40; ++i) {
		s.axis.push_back(0.1 * i);
		s.values.push_back(std::sin(pi * s.axis.back()));
	}
	const auto r = check_period(s, kappa, 1e-9);
	CHECK(r.pass);
	CHECK(r.pairs == 20);
	// sin(pi k) also has half-period anti-symmetry but not period 1
	CHECK(!check_period(s, 1.0, 1e-9).pass);
	CHECK(minimal_period(s, kappa, {2, 4}, 1e-9) == doctest::Approx(2.0));
	CHECK_THROWS_AS((void)check_period(s, 0.25, 1e-9), AlignmentError);
	CHECK_THROWS_AS((void)check_period(s, 2.5, 1e-9), AlignmentError);
	CHECK_THROWS_AS((void)minimal_period(s, 1.0, {2}, 1e-9), NumericalError);

	MeasureSeries ragged = s;
	ragged.axis[5] += 0.01;
	CHECK_THROWS_AS((void)check_period(ragged, kappa, 1e-9), AlignmentError);
}

TEST_CASE("a series periodic at kappa/2 reports kappa/2")
{
	MeasureSeries s;
	for(int i = 0; i < 48; ++i) {
		s.axis.push_back(0.25 * i);
		s.values.push_back(std::cos(2 * pi * s.axis.back() / 3.0));
	}
	CHECK(minimal_period(s, 6.0, {2, 3, 4, 6}, 1e-9) == doctest::Approx(3.0));
}

TEST_CASE("OTOC sweep is kappa_j-periodic but not kappa_j/2-periodic")
{
	const Spin spin(3);
	const double kappa = kappa_period(spin);
	const auto grid = KGrid::aligned(kappa, 0.1, 2, 12);
	const auto series = run_sweep(otoc_spec(3, 10, grid));
	CHECK(check_period(series, kappa, 1e-9).pass);
	CHECK(check_period(series, kappa / 2, 1e-9).max_abs_deviation > 1e-3);
}

TEST_CASE("echo reflection at j = 2")
{
	SweepSpec s;
	s.measure = Measure::Echo;
	s.spin = Spin(4);
	s.alpha = pi / 4;
	s.m = 10;
	s.dk = 0.1;
	s.grid = KGrid::from_divisions(0.0, 8 * pi, 240, true);
	// grid step 8 pi / 240 does not divide 8 pi - 0.1
	CHECK_THROWS_AS((void)reflection_check(run_sweep(s), s.spin, 1e-9), AlignmentError);
	s.grid = KGrid::from_divisions(0.0, 8 * pi - 0.1, 250, true);
	const auto r = reflection_check(run_sweep(s), s.spin, 1e-9);
	CHECK(r.pass);
	CHECK(r.pairs > 0);
}

TEST_CASE("time autocorrelation")
{
	std::vector<double> x;
	for(int m = 0; m < 100; ++m) x.push_back(std::sin(2 * pi * m / 7.0) + 0.3 * std::cos(2 * pi * m / 3.5));
	const auto r = time_autocorrelation(x, 20);
	CHECK(r[6] == doctest::Approx(1.0));
	CHECK(detect_time_period(x, 20, 0.99) == 7);
	const std::vector<double> flat(50, 0.3);
	CHECK(time_autocorrelation(flat, 5)[0] == 1.0);
	CHECK_THROWS_AS((void)time_autocorrelation(x, 99), ContractError);
}

namespace
{

MeasureSeries special_sweep(Measure measure, int tj, int m)
{
	SweepSpec s;
	s.measure = measure;
	s.spin = Spin(tj);
	s.alpha = pi / 2;
	s.m = m;
	s.grid = KGrid::aligned(kappa_period(s.spin), 0.05, 2, 120);
	if(measure == Measure::Otoc) s.observable = OtocObservable::Jz;
	if(measure == Measure::Echo) s.dk = 0.1;
	return run_sweep(s);
}

const std::vector<int> kFineDivisors{2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30, 40, 60};

} // namespace

TEST_CASE("J_z OTOC at j = 1, alpha = pi/2 has a period below 2 pi j")
{
	const auto series = special_sweep(Measure::Otoc, 2, 10);
	CHECK(minimal_period(series, 4 * pi, kFineDivisors, 1e-9) == doctest::Approx(2 * pi / 5));
}

TEST_CASE("echo at alpha = pi/2 has period pi j for integer j and 2 pi j for half-integer j")
{
	CHECK(minimal_period(special_sweep(Measure::Echo, 4, 10), 8 * pi, kFineDivisors, 1e-9) == doctest::Approx(2 * pi));
	CHECK(minimal_period(special_sweep(Measure::Echo, 3, 10), 3 * pi, kFineDivisors, 1e-9) == doctest::Approx(3 * pi));
}

TEST_CASE("half-integer j shows no period below 2 pi j")
{
	for(int tj : {3, 5}) {
		for(Measure measure : {Measure::Otoc, Measure::Echo}) {
			const double kappa = kappa_period(Spin(tj));
			CHECK(minimal_period(special_sweep(measure, tj, 10), kappa, kFineDivisors, 1e-9) == doctest::Approx(kappa));
		}
	}
}
