#pragma once

#include <string>
#include <string_view>

namespace sysrepro {

/// Porter (1980) suffix-stripping stemmer, original algorithm.
///
/// Expects a lowercase word. Words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

}  // namespace sysrepro
