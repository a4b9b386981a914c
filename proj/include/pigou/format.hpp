#pragma once

#include <string>
#include <string_view>

namespace pigou {

/// Formats a double with 12 significant digits (%.12g). All numeric output
/// (CSV, JSON, summaries) goes through this so runs are byte-reproducible.
std::string fmt12(double x);

/// FNV-1a 64-bit hash, hex encoded. Keys output directories by input content.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace pigou
