#pragma once

namespace pigou {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pigou
