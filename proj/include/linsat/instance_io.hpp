#pragma once

// Line-based text format:
//
//   linsat <q> <n> <m>
//   <c_1> ... <c_n> | <f_1> ... <f_k>      (m lines)
//
// Values are decimal element encodings. Lines starting with '#' and blank
// lines are ignored. Assignments are a single line of n encodings.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "linsat/errors.hpp"
#include "linsat/instance.hpp"

namespace linsat {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw SyntaxError(line, "expected a non-negative integer, got '" +
                                std::string(token) + "'");
  return value;
}

inline Element parse_element(std::string_view token, std::uint32_t q,
                             std::size_t line) {
  const auto v = parse_uint(token, line);
  if (v >= q)
    throw SyntaxError(line, "value " + std::string(token) +
                                " is not an element of F_" + std::to_string(q));
  return Element{static_cast<std::uint32_t>(v)};
}

inline bool skippable(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t q = 0, n = 0, m = 0;
  std::vector<Constraint> rows;
  std::optional<FieldSpec> field;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::strip_cr(raw);
    if (detail::skippable(line)) continue;
    const auto tokens = detail::split_ws(line);
    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "linsat")
        throw SyntaxError(line_no, "expected header 'linsat <q> <n> <m>'");
      q = detail::parse_uint(tokens[1], line_no);
      n = detail::parse_uint(tokens[2], line_no);
      m = detail::parse_uint(tokens[3], line_no);
      try {
        field = FieldSpec::from_order(q);
      } catch (const Error& e) {
        throw SyntaxError(line_no, e.what());
      }
      if (n == 0 || m == 0) throw SyntaxError(line_no, "n and m must be >= 1");
      have_header = true;
      continue;
    }
    if (rows.size() == m)
      throw SyntaxError(line_no, "more than m = " + std::to_string(m) +
                                     " constraint lines");
    std::size_t bar = tokens.size();
    for (std::size_t t = 0; t < tokens.size(); ++t)
      if (tokens[t] == "|") {
        bar = t;
        break;
      }
    if (bar == tokens.size()) throw SyntaxError(line_no, "missing '|'");
    if (bar != n)
      throw SyntaxError(line_no, "expected " + std::to_string(n) +
                                     " coefficients, got " +
                                     std::to_string(bar));
    Constraint row;
    const auto order = static_cast<std::uint32_t>(q);
    for (std::size_t t = 0; t < bar; ++t)
      row.coeffs.push_back(detail::parse_element(tokens[t], order, line_no));
    for (std::size_t t = bar + 1; t < tokens.size(); ++t)
      row.accept.push_back(detail::parse_element(tokens[t], order, line_no));
    rows.push_back(std::move(row));
  }
  if (!have_header) throw SyntaxError(line_no + 1, "missing header");
  if (rows.size() != m)
    throw SyntaxError(line_no + 1, "expected " + std::to_string(m) +
                                       " constraint lines, got " +
                                       std::to_string(rows.size()));
  return Instance(*field, n, std::move(rows));
}

inline std::string serialize_instance(const Instance& inst) {
  std::string out = "linsat " + std::to_string(inst.field().order()) + " " +
                    std::to_string(inst.num_variables()) + " " +
                    std::to_string(inst.num_constraints()) + "\n";
  for (const auto& row : inst.constraints()) {
    for (auto c : row.coeffs) out += std::to_string(c.value) + " ";
    out += "|";
    for (auto f : row.accept) out += " " + std::to_string(f.value);
    out += "\n";
  }
  return out;
}

inline std::string serialize_assignment(std::span<const Element> x) {
  std::string out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) out += ' ';
    out += std::to_string(x[j].value);
  }
  return out;
}

/// Parses one assignment line against field order q.
inline Assignment parse_assignment(std::string_view line, std::uint32_t q,
                                   std::size_t line_no = 1) {
  Assignment x;
  for (auto token : detail::split_ws(detail::strip_cr(line)))
    x.push_back(detail::parse_element(token, q, line_no));
  return x;
}

/// Parses every non-comment line as an assignment.
inline std::vector<Assignment> parse_assignments(std::string_view text,
                                                 std::uint32_t q) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::vector<Assignment> out;
  while (std::getline(in, raw)) {
    ++line_no;
    if (detail::skippable(raw)) continue;
    out.push_back(parse_assignment(raw, q, line_no));
  }
  return out;
}

}  // namespace linsat
