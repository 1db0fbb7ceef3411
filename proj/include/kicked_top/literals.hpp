#pragma once

#include <string>

#include "kicked_top/types.hpp"

namespace kicked_top
{

/// "2", "3/2" or "1.5" -> Spin with 2j exact; anything that is not a positive multiple of 1/2 throws SpecError.
[[nodiscard]] Spin parse_spin(const std::string& text);

/// "3/2"-style rendering of a spin.
[[nodiscard]] std::string format_spin(const Spin& spin);

/// Arithmetic over numbers and `pi`: "pi/4", "40*pi/2", "2.1+8*pi", "-(pi/3)". Throws SpecError.
[[nodiscard]] double parse_angle(const std::string& text);

} // namespace kicked_top
