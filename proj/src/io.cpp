#include "slspec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "slspec/errors.hpp"

namespace slspec::io {

namespace {

double require_number(const Json& j, const char* field) {
  if (!j.contains(field)) throw ValidationError(std::string("potential: missing field \"") + field + "\"");
  const Json& v = j.at(field);
  if (!v.is_number()) throw ValidationError(std::string("potential: field \"") + field + "\" must be a number");
  return v.get<double>();
}

std::vector<double> require_array(const Json& j, const char* field) {
  if (!j.contains(field)) throw ValidationError(std::string("potential: missing field \"") + field + "\"");
  const Json& v = j.at(field);
  if (!v.is_array()) throw ValidationError(std::string("potential: field \"") + field + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      throw ValidationError(std::string("potential: ") + field + "[" + std::to_string(i) + "] must be a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError("potential: unknown field \"" + key + "\"");
  }
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ValidationError("cannot parse \"" + std::string(whole) + "\" as a complex number");
  return v;
}

void dump(const Json& j, std::ostringstream& os, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << Json(key).dump() << colon;
        dump(value, os, indent, depth + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) os << ',' << nl;
        os << pad;
        dump(j[i], os, indent, depth + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

Potential potential_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("potential: top level must be an object");
  if (!j.contains("kind")) throw ValidationError("potential: missing field \"kind\"");
  if (!j.at("kind").is_string()) throw ValidationError("potential: field \"kind\" must be a string");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    reject_unknown(j, {"kind", "c"});
    return Potential::constant(require_number(j, "c"));
  }
  if (kind == "polynomial") {
    reject_unknown(j, {"kind", "coeffs"});
    return Potential::polynomial(require_array(j, "coeffs"));
  }
  if (kind == "table") {
    reject_unknown(j, {"kind", "x", "q"});
    return Potential::table(require_array(j, "x"), require_array(j, "q"));
  }
  throw ValidationError("potential: field \"kind\" must be one of constant, polynomial, table (got \"" + kind + "\")");
}

Potential parse_potential(const std::string& path_or_json) {
  std::string text;
  const auto first = path_or_json.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_json[first] == '{') {
    text = path_or_json;
  } else {
    std::ifstream in(path_or_json, std::ios::binary);
    if (!in) throw ValidationError("potential: cannot open file \"" + path_or_json + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("potential: malformed JSON: ") + e.what());
  }
  return potential_from_json(j);
}

Json potential_to_json(const Potential& q) {
  Json j;
  const auto c = q.coefficients();
  switch (q.kind()) {
    case Potential::Kind::Constant:
      j["kind"] = "constant";
      j["c"] = c.empty() ? 0.0 : c[0];
      break;
    case Potential::Kind::Polynomial:
      j["kind"] = "polynomial";
      j["coeffs"] = std::vector<double>(c.begin(), c.end());
      break;
    case Potential::Kind::Table: {
      j["kind"] = "table";
      const auto x = q.table_x();
      j["x"] = std::vector<double>(x.begin(), x.end());
      j["q"] = std::vector<double>(c.begin(), c.end());
      break;
    }
  }
  return j;
}

cplx parse_complex(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty complex number");
  if (text.back() != 'i' && text.back() != 'j') return {parse_real(text, whole), 0.0};

  text.remove_suffix(1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = 0;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re = text.substr(0, split);
  std::string_view im = text.substr(split);
  double im_value = 0.0;
  if (im.empty() || im == "+")
    im_value = 1.0;
  else if (im == "-")
    im_value = -1.0;
  else
    im_value = parse_real(im, whole);
  return {re.empty() ? 0.0 : parse_real(re, whole), im_value};
}

Json complex_to_json(cplx z) {
  Json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return std::signbit(v) ? "-0" : "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  dump(j, os, indent, 0);
  return os.str();
}

std::string CsvWriter::quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << quote(fields[i]);
  }
  out_ << "\r\n";
}

}  // namespace slspec::io
