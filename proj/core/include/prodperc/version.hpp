#pragma once

namespace prodperc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace prodperc
