#pragma once
// Edge-list ingestion and small output helpers. The text format is one edge
// per line, whitespace-separated `u v [timestamp]`; lines starting with `#`
// are comments; labels are arbitrary tokens interned in file order. The
// optional third column is accepted and ignored (file order is the stream
// order).

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "twohop/graph.hpp"

namespace twohop {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EdgeListData {
  Interner labels;
  std::vector<Edge> edges;  // in file order; duplicates preserved
};

inline EdgeListData load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list: " + path);
  EdgeListData data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a)) continue;  // blank line
    if (a[0] == '#') continue;
    if (!(fields >> b))
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected `u v [timestamp]`");
    data.edges.push_back({data.labels.intern(a), data.labels.intern(b)});
  }
  if (in.bad()) throw IoError("read failure on " + path);
  return data;
}

inline void save_edge_list(const std::vector<Edge>& edges, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
  if (!out) throw IoError("write failure on " + path);
}

// Fixed-format float used in every CSV so identical runs produce identical
// bytes.
inline std::string format_metric(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

}  // namespace twohop
