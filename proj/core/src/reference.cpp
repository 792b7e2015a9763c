#include "ccpp/reference.hpp"

#include <cstdlib>
#include <system_error>

namespace ccpp::reference {

InputBox input_box() {
  return {{1.81, 25.4, 993.0, 25.6}, {37.1, 81.6, 1030.0, 100.0}};
}

std::optional<std::filesystem::path> data_path(const std::filesystem::path& fallback) {
  std::error_code ec;
  if (const char* env = std::getenv("CCPP_DATA"); env != nullptr && *env != '\0') {
    std::filesystem::path p(env);
    if (std::filesystem::is_regular_file(p, ec)) return p;
    return std::nullopt;
  }
  if (!fallback.empty() && std::filesystem::is_regular_file(fallback, ec)) return fallback;
  return std::nullopt;
}

}  // namespace ccpp::reference
