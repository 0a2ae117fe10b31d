#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hdm/error.hpp"
#include "hdm/hypergraph.hpp"

namespace hdm {

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// Lines of a text blob, without terminators; a trailing '\r' is dropped.
inline std::vector<std::string_view> lines(std::string_view text) {
  auto out = split(text, '\n');
  if (!out.empty() && out.back().empty()) out.pop_back();
  for (auto& l : out) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline bool parse_double(std::string_view tok, double& out) {
  if (tok.empty()) return false;
  if (tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

template <typename Int>
bool parse_int(std::string_view tok, Int& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace detail

// Shortest round-trip-safe rendering used by every text emitter (%.17g).
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct HgfOptions {
  DuplicatePolicy duplicates = DuplicatePolicy::reject;
};

/// Parses the HGF text format:
///
///   hgf 1
///   nodes <N>
///   edge <w> <v1> ... <vk>
///
/// Lines starting with '#' are comments; fields are separated by single spaces.
inline Hypergraph parse_hgf(std::string_view text, HgfOptions opts = {}) {
  const auto ls = detail::lines(text);
  std::size_t stage = 0;  // 0: expect header, 1: expect nodes, 2: edges
  std::size_t n = 0;
  std::vector<Hyperedge> edges;
  for (std::size_t li = 0; li < ls.size(); ++li) {
    const std::size_t lineno = li + 1;
    const auto line = ls[li];
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split(line, ' ');
    for (auto t : tok) {
      if (t.empty()) throw ParseError(lineno, "fields must be separated by single spaces");
    }
    if (stage == 0) {
      if (tok.size() != 2 || tok[0] != "hgf" || tok[1] != "1") {
        throw ParseError(lineno, "expected header 'hgf 1'");
      }
      stage = 1;
    } else if (stage == 1) {
      if (tok.size() != 2 || tok[0] != "nodes" || !detail::parse_int(tok[1], n)) {
        throw ParseError(lineno, "expected 'nodes <N>'");
      }
      stage = 2;
    } else {
      if (tok[0] != "edge") throw ParseError(lineno, "expected 'edge <w> <v1> ...'");
      if (tok.size() < 3) throw ParseError(lineno, "edge has no vertices");
      Hyperedge e;
      if (!detail::parse_double(tok[1], e.weight)) {
        throw ParseError(lineno, "bad weight '" + std::string(tok[1]) + "'");
      }
      if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
        throw ParseError(lineno, "weight must be positive");
      }
      for (std::size_t t = 2; t < tok.size(); ++t) {
        Vertex v = 0;
        if (!detail::parse_int(tok[t], v)) {
          throw ParseError(lineno, "bad vertex id '" + std::string(tok[t]) + "'");
        }
        if (v >= n) throw ParseError(lineno, "vertex id " + std::to_string(v) + " >= nodes");
        e.vertices.push_back(v);
      }
      edges.push_back(std::move(e));
    }
  }
  if (stage < 2) throw ParseError(ls.size(), "missing header or nodes line");
  try {
    return Hypergraph(n, std::move(edges), opts.duplicates);
  } catch (const ParseError&) {
    throw;
  } catch (const DataError& err) {
    throw ParseError(0, err.what());
  }
}

/// Canonical HGF text: edges sorted by vertex list, weights with 17 significant digits.
inline std::string write_hgf(const Hypergraph& g) {
  std::string out = "hgf 1\nnodes " + std::to_string(g.num_vertices()) + "\n";
  const Hypergraph canon = g.canonical();
  for (const auto& e : canon.edges()) {
    out += "edge ";
    out += format_real(e.weight);
    for (Vertex v : e.vertices) {
      out += ' ';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

/// Header-free 0/1 incidence CSV (rows = vertices, columns = edges) with an
/// optional leading row '#weights,<w1>,...,<wm>'.
inline Hypergraph parse_incidence_csv(std::string_view text, HgfOptions opts = {}) {
  const auto ls = detail::lines(text);
  std::vector<double> weights;
  std::vector<std::vector<char>> rows;
  std::size_t cols = 0;
  bool have_cols = false;
  for (std::size_t li = 0; li < ls.size(); ++li) {
    const std::size_t lineno = li + 1;
    const auto line = ls[li];
    if (line.empty()) continue;
    auto cells = detail::split(line, ',');
    if (line.front() == '#') {
      if (detail::trim(cells[0]) != "#weights") continue;
      if (!weights.empty() || !rows.empty()) {
        throw ParseError(lineno, "#weights row must come first");
      }
      for (std::size_t c = 1; c < cells.size(); ++c) {
        double w = 0.0;
        if (!detail::parse_double(detail::trim(cells[c]), w) || !(w > 0.0)) {
          throw ParseError(lineno, "weights must be positive reals");
        }
        weights.push_back(w);
      }
      cols = weights.size();
      have_cols = true;
      continue;
    }
    if (have_cols && cells.size() != cols) throw ParseError(lineno, "ragged row");
    cols = cells.size();
    have_cols = true;
    std::vector<char> row(cols);
    for (std::size_t c = 0; c < cols; ++c) {
      const auto cell = detail::trim(cells[c]);
      if (cell == "1") {
        row[c] = 1;
      } else if (cell == "0") {
        row[c] = 0;
      } else {
        throw ParseError(lineno, "non-binary entry '" + std::string(cell) + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (weights.empty()) weights.assign(cols, 1.0);
  std::vector<Hyperedge> edges(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    edges[c].weight = weights[c];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r][c]) edges[c].vertices.push_back(static_cast<Vertex>(r));
    }
    if (edges[c].vertices.empty()) {
      throw ParseError(0, "column " + std::to_string(c) + " is all zero");
    }
  }
  try {
    return Hypergraph(rows.size(), std::move(edges), opts.duplicates);
  } catch (const DataError& err) {
    throw ParseError(0, err.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Hypergraph load_hgf(const std::string& path, HgfOptions opts = {}) {
  try {
    return parse_hgf(read_file(path), opts);
  } catch (const ParseError& err) {
    throw DataError(path + ": " + err.what());
  }
}

}  // namespace hdm
