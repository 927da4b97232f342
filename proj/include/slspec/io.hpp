#pragma once

// Reading potential files and writing deterministic JSON or CSV.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slspec/free_solutions.hpp"
#include "slspec/potential.hpp"

namespace slspec::io {

using Json = nlohmann::ordered_json;

/// Accepts {"kind":"constant","c":..}, {"kind":"polynomial","coeffs":[..]}
/// and {"kind":"table","x":[..],"q":[..]}. Throws ValidationError naming the
/// offending field.
Potential potential_from_json(const Json& j);
/// Reads a potential file; text starting with '{' is parsed as inline JSON.
Potential parse_potential(const std::string& path_or_json);
/// Inverse of potential_from_json.
Json potential_to_json(const Potential& q);

/// "3", "-2.5e1", "1+2i", "4-0.5i", "2i", "-i".
cplx parse_complex(std::string_view text);
Json complex_to_json(cplx z);

/// Serializes with a fixed key order and every floating-point number printed
/// with 17 significant digits; non-finite numbers become null.
std::string dump_json(const Json& j, int indent = 2);
std::string format_number(double v);

/// RFC 4180 rows with CRLF line ends. Fields containing separators or quotes are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);
  static std::string quote(std::string_view field);

 private:
  std::ostream& out_;
};

}  // namespace slspec::io
