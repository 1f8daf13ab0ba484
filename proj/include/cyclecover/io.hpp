#pragma once

// Text formats.
//
// Instance:  "n s" on the first line, then for u = 0..n-2 one line with the
//            n-1-u colours of {u,u+1} .. {u,n-1}. Lines starting with '#' are comments.
// Partition: one line per cycle, "colour v1 v2 ... vk"; colour is "-" for cycles of
//            length <= 1 and the empty cycle is the single token "-".

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cyclecover/core.hpp"

namespace cyclecover {

namespace detail {

inline bool skip_line(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

inline long parse_long(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad " + what + " '" + tok + "'");
  }
}

}  // namespace detail

inline void write_instance(std::ostream& os, const EdgeColouring& c) {
  os << c.n() << ' ' << c.palette().size() << '\n';
  for (Vertex u = 0; u + 1 < c.n(); ++u) {
    for (Vertex v = u + 1; v < c.n(); ++v) {
      if (v > u + 1) os << ' ';
      os << c(u, v);
    }
    os << '\n';
  }
}

inline std::string instance_to_string(const EdgeColouring& c) {
  std::ostringstream os;
  write_instance(os, c);
  return os.str();
}

inline EdgeColouring read_instance(std::istream& is) {
  std::vector<long> tokens;
  std::string line;
  while (std::getline(is, line)) {
    if (detail::skip_line(line)) continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(detail::parse_long(tok, "instance token"));
  }
  require(tokens.size() >= 2, ErrorCode::ParseError, "missing 'n s' header");
  const long n = tokens[0];
  const long s = tokens[1];
  require(n >= 0 && n <= 100000, ErrorCode::ParseError, "bad vertex count");
  const std::size_t pairs = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  require(tokens.size() == pairs + 2, ErrorCode::ParseError,
          "expected " + std::to_string(pairs) + " colours, found " + std::to_string(tokens.size() - 2));
  std::vector<ColourId> upper;
  upper.reserve(pairs);
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    require(tokens[i] >= 0, ErrorCode::ParseError, "negative colour id");
    upper.push_back(static_cast<ColourId>(tokens[i]));
  }
  EdgeColouring c(static_cast<int>(n), upper);
  require(static_cast<long>(c.palette().size()) == s, ErrorCode::ParseError,
          "header declares " + std::to_string(s) + " colours, found " + std::to_string(c.palette().size()));
  return c;
}

inline EdgeColouring instance_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_instance(is);
}

inline EdgeColouring load_instance(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open " + path);
  return read_instance(in);
}

inline void save_instance(const std::string& path, const EdgeColouring& c) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::ParseError, "cannot write " + path);
  write_instance(out, c);
}

inline void write_cycle(std::ostream& os, const Cycle& cyc) {
  if (cyc.colour)
    os << *cyc.colour;
  else
    os << '-';
  for (Vertex v : cyc.vertices) os << ' ' << v;
  os << '\n';
}

inline void write_partition(std::ostream& os, const CyclePartition& p) {
  for (const Cycle& cyc : p.cycles) write_cycle(os, cyc);
}

inline std::string partition_to_string(const CyclePartition& p) {
  std::ostringstream os;
  write_partition(os, p);
  return os.str();
}

/// Reads cycles; comment lines and "key=value" summary lines are skipped.
inline CyclePartition read_partition(std::istream& is) {
  CyclePartition p;
  std::string line;
  while (std::getline(is, line)) {
    if (detail::skip_line(line) || line.find('=') != std::string::npos) continue;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    Cycle cyc;
    if (tok != "-") {
      const long col = detail::parse_long(tok, "colour");
      require(col >= 0, ErrorCode::ParseError, "negative colour id");
      cyc.colour = static_cast<ColourId>(col);
    }
    while (ls >> tok) cyc.vertices.push_back(static_cast<Vertex>(detail::parse_long(tok, "vertex")));
    p.cycles.push_back(std::move(cyc));
  }
  return p;
}

inline CyclePartition partition_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_partition(is);
}

inline CyclePartition load_partition(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::ParseError, "cannot open " + path);
  return read_partition(in);
}

}  // namespace cyclecover
