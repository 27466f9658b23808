#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"

namespace bootperc {

// Plain-text edge list:
//   line 1:      "n m"
//   next m lines "u v" with 0 <= u < v < n, no duplicates.
// Blank trailing lines are tolerated; anything else is a FormatError that
// names the 1-based line.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw FormatError(line, "expected a non-negative decimal integer, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

inline Graph parse_graph(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) -> bool {
    if (!std::getline(in, out)) return false;
    ++line_no;
    return true;
  };

  if (!next_line(text)) throw FormatError(1, "empty input; expected header 'n m'");
  auto header = detail::split_ws(text);
  if (header.size() != 2) throw FormatError(line_no, "header must be 'n m'");
  const std::size_t n = detail::parse_index(header[0], line_no);
  const std::size_t m = detail::parse_index(header[1], line_no);
  if (n == 0) throw FormatError(line_no, "n must be at least 1");
  if (n > 0 && m > n * (n - 1) / 2) throw FormatError(line_no, "more edges than a simple graph on n vertices allows");

  GraphBuilder b(n);
  for (std::size_t e = 0; e < m; ++e) {
    if (!next_line(text))
      throw FormatError(line_no + 1, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(e));
    auto toks = detail::split_ws(text);
    if (toks.size() != 2) throw FormatError(line_no, "edge line must be 'u v'");
    const std::size_t u = detail::parse_index(toks[0], line_no);
    const std::size_t v = detail::parse_index(toks[1], line_no);
    if (u == v) throw FormatError(line_no, "self-loop at vertex " + std::to_string(u));
    if (u >= n || v >= n) throw FormatError(line_no, "vertex index >= n");
    if (u > v) throw FormatError(line_no, "edge endpoints must satisfy u < v");
    if (!b.add_edge(u, v)) throw FormatError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  while (next_line(text))
    if (!detail::split_ws(text).empty()) throw FormatError(line_no, "unexpected content after the last edge");
  return b.build();
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

inline void write_graph(const Graph& g, std::ostream& out) {
  out << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_graph_text(const Graph& g) {
  std::ostringstream out;
  write_graph(g, out);
  return out.str();
}

inline Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

inline void write_graph(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file '" + path + "'");
  write_graph(g, out);
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace bootperc
