#pragma once

namespace mcvd {

inline constexpr char kVersion[] = "1.0.0";

}  // namespace mcvd
