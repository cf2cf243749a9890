#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lpcurse/errors.hpp"
#include "lpcurse/pointsets.hpp"

namespace lpcurse {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    throw ParseError("'" + std::string(field) + "' is not a decimal number", line);
  }
  return value;
}

std::string format_number(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

} // namespace

RuleFile parse_rule(std::string_view text) {
  std::size_t dim = 0;
  bool weighted = false;
  bool have_header = false;
  std::vector<double> coords;
  std::vector<double> weights;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_fields(line);
    if (!have_header) {
      weighted = fields.back() == "weight";
      dim = fields.size() - (weighted ? 1 : 0);
      if (dim == 0) throw ParseError("header has no coordinate columns", line_no);
      for (std::size_t k = 0; k < dim; ++k) {
        if (fields[k] != "x" + std::to_string(k + 1)) {
          throw ParseError("expected header column 'x" + std::to_string(k + 1) + "', got '" +
                               std::string(fields[k]) + "'",
                           line_no);
        }
      }
      have_header = true;
      continue;
    }

    if (fields.size() != dim + (weighted ? 1 : 0)) {
      throw ParseError("expected " + std::to_string(dim + (weighted ? 1 : 0)) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (std::size_t k = 0; k < dim; ++k) {
      const double x = parse_number(fields[k], line_no);
      if (!(x >= 0.0 && x < 1.0)) {
        throw DomainError("line " + std::to_string(line_no) + ": coordinate x" +
                          std::to_string(k + 1) + "=" + std::string(fields[k]) +
                          " outside [0, 1)");
      }
      coords.push_back(x);
    }
    if (weighted) {
      const double w = parse_number(fields[dim], line_no);
      if (!(w >= 0.0) || std::isinf(w)) {
        throw DomainError("line " + std::to_string(line_no) + ": weight " +
                          std::string(fields[dim]) + " is not a finite nonnegative number");
      }
      weights.push_back(w);
    }
  }
  if (!have_header) throw ParseError("missing header row 'x1,...,xd[,weight]'", 0);

  PointSet points(dim, std::move(coords));
  if (!weighted) return {QuadratureRule::qmc(std::move(points)), false};
  return {QuadratureRule(std::move(points), std::move(weights)), true};
}

RuleFile read_rule(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_rule(buffer.str());
}

std::string format_rule(const QuadratureRule& rule, bool weighted) {
  std::string out;
  for (std::size_t k = 0; k < rule.dim(); ++k) {
    if (k) out += ',';
    out += "x" + std::to_string(k + 1);
  }
  if (weighted) out += ",weight";
  out += '\n';
  const PointSet& ps = rule.points();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t k = 0; k < ps.dim(); ++k) {
      if (k) out += ',';
      out += format_number(ps.coord(i, k));
    }
    if (weighted) out += ',' + format_number(rule.weights()[i]);
    out += '\n';
  }
  return out;
}

void write_rule(const QuadratureRule& rule, const std::filesystem::path& path, bool weighted) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write " + path.string(), 0);
  out << format_rule(rule, weighted);
  if (!out) throw ParseError("write to " + path.string() + " failed", 0);
}

} // namespace lpcurse
