#pragma once

// Plain-text edge lists: first line "v m", then m lines "u w" (0-indexed).

#include <graphseq/graph.hpp>

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace graphseq {

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  };
  auto parse_two = [&](unsigned long long& a, unsigned long long& b) {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw GraphError("line " + std::to_string(line_no) + ": expected two non-negative integers",
                       line_no);
    if (line.find('-') != std::string::npos)
      throw GraphError("line " + std::to_string(line_no) + ": negative value", line_no);
  };

  if (!next_line()) throw GraphError("line 1: missing header \"v m\"", 1);
  unsigned long long v = 0, m = 0;
  parse_two(v, m);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(m);
  for (unsigned long long i = 0; i < m; ++i) {
    if (!next_line())
      throw GraphError("line " + std::to_string(line_no + 1) + ": expected " + std::to_string(m) +
                           " edges, found " + std::to_string(i),
                       line_no + 1);
    unsigned long long a = 0, b = 0;
    parse_two(a, b);
    if (a >= v || b >= v)
      throw GraphError("line " + std::to_string(line_no) + ": vertex out of range", line_no);
    pairs.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  while (next_line())
    if (line.find_first_not_of(" \t") != std::string::npos)
      throw GraphError("line " + std::to_string(line_no) + ": trailing content", line_no);
  try {
    return Graph::build(v, pairs);
  } catch (const GraphError& e) {
    // pair index i sits on line i + 2
    const auto bad = e.index().value_or(0) + 2;
    throw GraphError("line " + std::to_string(bad) + ": " + e.what(), bad);
  }
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.tail << ' ' << e.head << '\n';
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return read_edge_list(in);
}

inline void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  write_edge_list(out, g);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace graphseq
