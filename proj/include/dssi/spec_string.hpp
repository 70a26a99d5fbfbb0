#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dssi {

/// A "name:key=value,key=value" or "name:v1,v2" selector as used on the
/// command line for denoisers, initializers and schedules.
struct SpecString {
  std::string name;
  std::map<std::string, std::string> options;
  std::vector<std::string> positional;

  static SpecString parse(std::string_view text);

  double number(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  /// Throws ParameterError if any option key is not in `allowed`.
  void only(std::initializer_list<std::string_view> allowed) const;
};

double parse_number(std::string_view text, std::string_view what);

}  // namespace dssi
