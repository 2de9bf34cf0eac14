#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cliqueorder/graph.hpp"

namespace cliqueorder {

class DimacsError : public std::runtime_error {
 public:
  DimacsError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// DIMACS ascii clique format: "c" comments, one "p edge n m" header, then
// 1-based "e u v" lines. Duplicate edges are accepted; the header edge count is
// not enforced since duplicates make it ambiguous.
inline Graph from_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == 'c') continue;
    if (tag == "p") {
      std::string format;
      long long nn = -1, mm = -1;
      if (have_header) throw DimacsError(lineno, "duplicate problem line");
      if (!(ls >> format >> nn >> mm) || format != "edge" || nn <= 0 || mm < 0)
        throw DimacsError(lineno, "malformed header, expected 'p edge <n> <m>'");
      std::string rest;
      if (ls >> rest) throw DimacsError(lineno, "trailing tokens on header");
      n = static_cast<std::size_t>(nn);
      have_header = true;
      edges.reserve(static_cast<std::size_t>(mm));
    } else if (tag == "e") {
      if (!have_header) throw DimacsError(lineno, "edge line before header");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) throw DimacsError(lineno, "malformed edge line");
      std::string rest;
      if (ls >> rest) throw DimacsError(lineno, "trailing tokens on edge line");
      if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n)
        throw DimacsError(lineno, "vertex index out of range");
      if (u == v) throw DimacsError(lineno, "self-loop");
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    } else {
      throw DimacsError(lineno, "unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw DimacsError(lineno, "missing 'p edge' header");
  return Graph(n, edges);
}

inline std::string to_dimacs(const Graph& g, std::string_view comment = {}) {
  std::ostringstream out;
  if (!comment.empty()) out << "c " << comment << '\n';
  out << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace cliqueorder
