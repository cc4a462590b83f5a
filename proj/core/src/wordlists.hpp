#pragma once

#include <string_view>
#include <vector>

namespace sysrepro::detail {

const std::vector<std::string_view>& english_stop_words();
const std::vector<std::string_view>& c_reserved_words();

}  // namespace sysrepro::detail
