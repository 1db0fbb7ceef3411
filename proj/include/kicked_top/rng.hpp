#pragma once

#include <cstdint>

namespace kicked_top
{

// Counter-based stream: draw n is splitmix64(key + (n+1) * golden).
// Output is bit-identical on every platform; bump kRngVersion if the mapping changes.
inline constexpr int kRngVersion = 1;
inline constexpr const char* kRngName = "splitmix64-counter-boxmuller-v1";

class CounterRng
{
public:
	explicit CounterRng(std::uint64_t key) : key_{key} {}

	std::uint64_t next_u64();
	/// Uniform on [0, 1) with 53 random bits.
	double next_uniform();
	/// Uniform on (0, 1].
	double next_uniform_open_low();
	/// Standard normal via Box-Muller; both variates of a pair are used.
	double next_normal();

	[[nodiscard]] std::uint64_t key() const { return key_; }
	[[nodiscard]] std::uint64_t counter() const { return counter_; }

private:
	std::uint64_t key_;
	std::uint64_t counter_ = 0;
	bool has_spare_ = false;
	double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Per-item stream key: seed xor item index.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) { return seed ^ index; }

} // namespace kicked_top
