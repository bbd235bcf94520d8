// Deterministic serialization and value parsing shared by the CLI and the
// tests: CSV tables with a single '#' metadata line, JSON check reports with
// stable key order, and the complex-token grammar used for command-line
// vectors ("1", "0.5-0.2i", "1.2i").  No timestamps anywhere; identical
// inputs produce identical bytes.
#pragma once

#include <string>
#include <vector>

#include "bsphere/types.hpp"
#include "bsphere/verify.hpp"

namespace bsphere::io {

/// Rectangular table with named columns; every cell is pre-formatted text.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Build identifier embedded at configure time ("git:<describe>").
std::string build_id();

/// Shortest-faithful numeric formatting (12 significant digits, "%.12g").
std::string num(double v);

/// Complex formatted in the same grammar parse_complex accepts:
/// "1.5", "0.5-0.2i", "1.2i".
std::string num(cplx v);

/// RFC-4180 field quoting (quotes fields containing comma, quote, CR, LF).
std::string csv_escape(const std::string& field);

/// One '#'-prefixed metadata line (build id + config echo), then an RFC-4180
/// body (CRLF record separators): header row followed by data rows.
std::string csv_render(const Table& t, const std::string& config_echo);

/// Check-report JSON (stable key order, two-space indent, trailing newline):
/// build, suite, config, checks[], passed, total, failures.
std::string report_json(const std::string& suite,
                        const std::vector<verify::CheckResult>& results,
                        const std::string& config_echo);

/// Table as JSON (build, config, columns, rows as column-keyed objects).
std::string table_json(const Table& t, const std::string& config_echo);

/// Write `content` to `path`; throws std::runtime_error when the file cannot
/// be created or written.
void write_file(const std::string& path, const std::string& content);

/// Parse one complex token: "1", "-0.3", "0.5-0.2i", "1.2i", "i", "-i",
/// exponents allowed ("2e-3+1e-2i").  Throws std::invalid_argument on
/// malformed input.
cplx parse_complex(const std::string& token);

/// Comma-separated complex tokens -> vector (throws on empty/malformed).
CVec parse_cvec(const std::string& text);

/// Comma-separated reals -> vector (throws on empty/malformed).
std::vector<double> parse_double_list(const std::string& text);

/// Comma-separated non-negative integers -> multi-index entries.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace bsphere::io
