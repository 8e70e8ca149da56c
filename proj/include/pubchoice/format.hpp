#pragma once

// Minimal {}-style string formatting (subset of C++20 std::format, which the
// toolchain here does not ship): positional "{}" plus printf-style numeric
// specs like "{:.2e}".
#include <cstdio>
#include <cstring>
#include <sstream>
#include <string>
#include <type_traits>

namespace pubchoice {

namespace fmt_detail {

template <typename T>
void append_one(std::string& out, const std::string& spec, const T& value) {
  if constexpr (std::is_floating_point_v<T>) {
    if (!spec.empty()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, ("%" + spec).c_str(), static_cast<double>(value));
      out += buf;
      return;
    }
  }
  std::ostringstream ss;
  ss << std::boolalpha << value;
  out += ss.str();
}

inline void run(std::string& out, const char* f) {
  for (; *f; ++f) {
    if ((*f == '{' && f[1] == '{') || (*f == '}' && f[1] == '}')) ++f;
    out += *f;
  }
}

template <typename T, typename... Rest>
void run(std::string& out, const char* f, const T& value, const Rest&... rest) {
  while (*f) {
    if (*f == '{') {
      if (f[1] == '{') {
        out += '{';
        f += 2;
        continue;
      }
      const char* end = std::strchr(f, '}');
      std::string spec(f + 1, end);
      if (!spec.empty() && spec.front() == ':') spec.erase(0, 1);
      append_one(out, spec, value);
      run(out, end + 1, rest...);
      return;
    }
    if (*f == '}' && f[1] == '}') ++f;
    out += *f++;
  }
}

}  // namespace fmt_detail

template <typename... Args>
std::string format(const std::string& f, const Args&... args) {
  std::string out;
  fmt_detail::run(out, f.c_str(), args...);
  return out;
}

}  // namespace pubchoice
