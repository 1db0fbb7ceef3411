#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "kicked_top/literals.hpp"
#include "kicked_top/series_io.hpp"

using namespace kicked_top;
using std::numbers::pi;

TEST_CASE("series CSV round-trips values to 1e-15 relative")
{
	MeasureSeries s;
	s.meta.measure = Measure::Echo;
	s.meta.spin = Spin(5);
	s.meta.alpha = pi / 4;
	s.meta.m = 10;
	s.meta.dk = 0.1;
	s.meta.seed = 77;
	s.axis_name = "k";
	for(int i = 0; i < 50; ++i) {
		s.axis.push_back(0.1 * i);
		s.values.push_back(1.0 / (3.0 + std::sin(1.7 * i)) * std::pow(10.0, (i % 9) - 4));
	}
	std::stringstream buf;
	write_series_csv(buf, s, {{"note", "x"}});
	const auto back = read_series_csv(buf);
	REQUIRE(back.values.size() == s.values.size());
	for(std::size_t i = 0; i < s.values.size(); ++i) {
		CHECK(std::abs(back.values[i] - s.values[i]) <= 1e-15 * std::abs(s.values[i]));
	}
	CHECK(back.meta.measure == Measure::Echo);
	CHECK(back.meta.spin == Spin(5));
	CHECK(back.meta.alpha == s.meta.alpha);
	CHECK(back.meta.dk == s.meta.dk);
	CHECK(back.meta.m == 10);
	CHECK(back.meta.seed == 77);
	CHECK(back.axis_name == "k");
}

TEST_CASE("series CSV layout")
{
	MeasureSeries s;
	s.meta.measure = Measure::Otoc;
	s.meta.spin = Spin(2);
	s.meta.w_seed = 3;
	s.meta.observable = OtocObservable::Goe;
	s.axis_name = "m";
	s.axis = {0, 1};
	s.values = {0.0, 0.25};
	std::stringstream buf;
	write_series_csv(buf, s);
	const std::string text = buf.str();
	CHECK(text.find("# measure: otoc\n") != std::string::npos);
	CHECK(text.find("# rng: splitmix64-counter-boxmuller-v1\n") != std::string::npos);
	CHECK(text.find("m,otoc\n0.000000000000000e+00,0.000000000000000e+00\n") != std::string::npos);
}

TEST_CASE("malformed CSV is rejected")
{
	std::stringstream no_header("# twice_j: 2\n");
	CHECK_THROWS_AS((void)read_series_csv(no_header), ContractError);
	std::stringstream bad_value("# twice_j: 2\nk,le\n0.0,abc\n");
	CHECK_THROWS_AS((void)read_series_csv(bad_value), ContractError);
	std::stringstream no_spin("k,le\n0.0,1.0\n");
	CHECK_THROWS_AS((void)read_series_csv(no_spin), ContractError);
}

TEST_CASE("spin literals")
{
	CHECK(parse_spin("2").twice_j() == 4);
	CHECK(parse_spin("3/2").twice_j() == 3);
	CHECK(parse_spin("1.5").twice_j() == 3);
	CHECK(parse_spin("20").twice_j() == 40);
	CHECK_THROWS_AS((void)parse_spin("0"), SpecError);
	CHECK_THROWS_AS((void)parse_spin("1/3"), SpecError);
	CHECK_THROWS_AS((void)parse_spin("0.7"), SpecError);
	CHECK_THROWS_AS((void)parse_spin("two"), SpecError);
	CHECK(format_spin(Spin(3)) == "3/2");
	CHECK(format_spin(Spin(4)) == "2");
}

TEST_CASE("angle literals")
{
	CHECK(parse_angle("pi/4") == doctest::Approx(pi / 4));
	CHECK(parse_angle("40*pi/2") == doctest::Approx(20 * pi));
	CHECK(parse_angle("2.1+8*pi") == doctest::Approx(2.1 + 8 * pi));
	CHECK(parse_angle("-(pi/3)") == doctest::Approx(-pi / 3));
	CHECK(parse_angle("1e-3") == doctest::Approx(1e-3));
	CHECK_THROWS_AS((void)parse_angle("pi/"), SpecError);
	CHECK_THROWS_AS((void)parse_angle("tau"), SpecError);
	CHECK_THROWS_AS((void)parse_angle("1/0"), SpecError);
	CHECK_THROWS_AS((void)parse_angle(""), SpecError);
}
