#include "dssi/spec_string.hpp"

#include <charconv>
#include <cmath>

#include "dssi/error.hpp"

namespace dssi {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParameterError("invalid number \"" + std::string(text) + "\" for " + std::string(what));
  }
  return v;
}

SpecString SpecString::parse(std::string_view text) {
  SpecString out;
  const auto colon = text.find(':');
  out.name = std::string(text.substr(0, colon));
  if (out.name.empty()) throw ParameterError("empty selector \"" + std::string(text) + "\"");
  if (colon == std::string_view::npos) return out;

  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.positional.emplace_back(item);
    } else {
      out.options[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

double SpecString::number(const std::string& key, double fallback) const {
  const auto it = options.find(key);
  if (it == options.end()) return fallback;
  return parse_number(it->second, name + "." + key);
}

std::size_t SpecString::count(const std::string& key, std::size_t fallback) const {
  const double v = number(key, static_cast<double>(fallback));
  if (v < 0.0 || v != std::floor(v)) throw ParameterError(name + "." + key + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

void SpecString::only(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [key, value] : options) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) throw ParameterError("unknown option \"" + key + "\" for " + name);
  }
}

}  // namespace dssi
