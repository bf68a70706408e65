#pragma once

// Flat "key = value" configuration files and grid syntax.

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "iqofdm/error.hpp"

namespace iqofdm {

// Raised when a configuration file cannot be opened.
class FileError : public Error {
 public:
  using Error::Error;
};

using KeyValues = std::map<std::string, std::string>;

// One "key = value" per line; '#' starts a comment; blank lines ignored.
// Keys are case-sensitive and must be unique. Throws ConfigError with a line number.
KeyValues parse_key_values(std::istream& in, const std::string& origin = "<config>");
KeyValues load_key_values(const std::string& path);

// "start:step:stop" (stop included when it lies on the grid), a comma list,
// or a single number.
std::vector<double> parse_grid(const std::string& text);

double parse_double(const std::string& key, const std::string& value);
long long parse_integer(const std::string& key, const std::string& value);
bool parse_bool(const std::string& key, const std::string& value);
std::vector<std::string> split_list(const std::string& text);

}  // namespace iqofdm
