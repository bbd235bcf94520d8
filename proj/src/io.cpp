#include "bsphere/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <bsphere/version.hpp>

namespace bsphere::io {

namespace {

using ordered_json = nlohmann::ordered_json;

/// stod that requires the whole string to be consumed.
double to_double(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty numeric token");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed numeric token '" + s + "'");
  }
  if (used != s.size())
    throw std::invalid_argument("malformed numeric token '" + s + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::string build_id() { return std::string("git:") + kGitDescribe; }

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string num(cplx v) {
  const double re = v.real();
  const double im = v.imag();
  if (im == 0.0) return num(re);
  std::string s;
  if (re != 0.0) s = num(re);
  std::string imag = num(im) + "i";
  if (!s.empty() && im > 0.0) s += "+";
  return s + imag;
}

std::string csv_escape(const std::string& field) {
  const bool needs_quote =
      field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quote) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string csv_render(const Table& t, const std::string& config_echo) {
  std::string out = "# bsphere " + build_id();
  if (!config_echo.empty()) out += " | " + config_echo;
  out += "\r\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ",";
    out += csv_escape(t.columns[c]);
  }
  out += "\r\n";
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw std::invalid_argument("csv_render: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ",";
      out += csv_escape(row[c]);
    }
    out += "\r\n";
  }
  return out;
}

std::string report_json(const std::string& suite,
                        const std::vector<verify::CheckResult>& results,
                        const std::string& config_echo) {
  ordered_json root;
  root["build"] = build_id();
  root["suite"] = suite;
  root["config"] = config_echo;
  ordered_json checks = ordered_json::array();
  int failures = 0;
  for (const auto& r : results) {
    ordered_json c;
    c["suite"] = r.suite;
    c["name"] = r.name;
    c["passed"] = r.passed;
    c["observed"] = r.observed;
    c["threshold"] = r.threshold;
    c["comparison"] = r.comparison;
    c["detail"] = r.detail;
    checks.push_back(std::move(c));
    if (!r.passed) ++failures;
  }
  root["checks"] = std::move(checks);
  root["passed"] = failures == 0 && !results.empty();
  root["total"] = results.size();
  root["failures"] = failures;
  return root.dump(2) + "\n";
}

std::string table_json(const Table& t, const std::string& config_echo) {
  ordered_json root;
  root["build"] = build_id();
  root["config"] = config_echo;
  root["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw std::invalid_argument("table_json: ragged row");
    ordered_json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[t.columns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.flush();
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

cplx parse_complex(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex token");
  if (s.back() != 'i' && s.back() != 'I') return cplx(to_double(s), 0.0);
  s.pop_back();  // drop the imaginary suffix
  if (s.empty() || s == "+") return cplx(0.0, 1.0);
  if (s == "-") return cplx(0.0, -1.0);
  // split "<real><signed imag>" at the last sign not preceded by e/E
  for (std::size_t pos = s.size() - 1; pos > 0; --pos) {
    const char c = s[pos];
    if ((c == '+' || c == '-') && s[pos - 1] != 'e' && s[pos - 1] != 'E') {
      const double re = to_double(s.substr(0, pos));
      const std::string im = s.substr(pos);
      double iv;
      if (im == "+") iv = 1.0;
      else if (im == "-") iv = -1.0;
      else iv = to_double(im);
      return cplx(re, iv);
    }
  }
  return cplx(0.0, to_double(s));  // pure imaginary, e.g. "0.5i"
}

CVec parse_cvec(const std::string& text) {
  const auto parts = split_commas(text);
  CVec out;
  for (const auto& p : parts) out.push_back(parse_complex(p));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  const auto parts = split_commas(text);
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(to_double(p));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  const auto parts = split_commas(text);
  std::vector<int> out;
  for (const auto& p : parts) {
    const double v = to_double(p);
    const int k = static_cast<int>(v);
    if (v != k || k < 0)
      throw std::invalid_argument("multi-index entries must be integers >= 0");
    out.push_back(k);
  }
  return out;
}

}  // namespace bsphere::io
