#include "iqofdm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace iqofdm {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& origin) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open config file '" + path + "'");
  return parse_key_values(in, path);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || v.empty() || !std::isfinite(out)) {
    throw ConfigError("'" + key + "': '" + value + "' is not a number");
  }
  return out;
}

long long parse_integer(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || v.empty()) {
    throw ConfigError("'" + key + "': '" + value + "' is not an integer");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = trim(value);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("'" + key + "': '" + value + "' is not a boolean");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty grid");
  if (t.find(':') == std::string::npos) {
    std::vector<double> out;
    for (const auto& item : split_list(t)) out.push_back(parse_double("grid", item));
    if (out.empty()) throw ConfigError("empty grid");
    return out;
  }
  std::vector<std::string> parts;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("range '" + text + "' must be start:step:stop");
  const double start = parse_double("grid", parts[0]);
  const double step = parse_double("grid", parts[1]);
  const double stop = parse_double("grid", parts[2]);
  if (step == 0.0 || (stop - start) / step < 0.0) {
    throw ConfigError("range '" + text + "' does not reach its stop value");
  }
  // Integer stepping with a small tolerance keeps an on-grid stop inside.
  const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    double v = start + static_cast<double>(i) * step;
    if (std::abs(v) < 1e-12 * std::max(std::abs(start), std::abs(stop))) v = 0.0;
    out.push_back(v);
  }
  return out;
}

}  // namespace iqofdm
