#include "kicked_top/rng.hpp"

#include <cmath>
#include <numbers>

namespace kicked_top
{

std::uint64_t splitmix64(std::uint64_t x)
{
	x += 0x9E3779B97F4A7C15ULL;
	x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
	x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
	return x ^ (x >> 31);
}

std::uint64_t CounterRng::next_u64()
{
	++counter_;
	return splitmix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::next_uniform()
{
	return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_uniform_open_low()
{
	return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::next_normal()
{
	if(has_spare_) {
		has_spare_ = false;
		return spare_;
	}
	const double u1 = next_uniform_open_low();
	const double u2 = next_uniform();
	const double r = std::sqrt(-2.0 * std::log(u1));
	const double a = 2.0 * std::numbers::pi * u2;
	spare_ = r * std::sin(a);
	has_spare_ = true;
	return r * std::cos(a);
}

} // namespace kicked_top
