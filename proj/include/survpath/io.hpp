// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Text formats.
//
// Bare instances (.spn):
//
//   spn 1
//   fibers 3
//   w 2                 (optional)
//   k 2                 (optional)
//   path 1: f1 f2       (fibers the path USES, one line per path, ids 1..n)
//
// Layered networks (.lnet):
//
//   lnet 1              (optional header)
//   pnodes 1 2 3 4
//   pfibers
//   1 1 2               (fiber id, endpoints; ids 1..m in order)
//   lnodes 1 4
//   directed            (optional: links run u -> v only)
//   llinks
//   1 1 4: 1 2          (link id, endpoints: routed fibers in order)
//   st 1 4
//
// Blank lines and lines starting with '#' are ignored in both formats.

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "survpath/network.hpp"
#include "survpath/pathing.hpp"
#include "survpath/survival_matrix.hpp"

namespace survpath::io {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline bool skip_line(const std::vector<std::string>& toks) {
  return toks.empty() || toks[0].front() == '#';
}

[[noreturn]] inline void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

inline long long parse_int(const std::string& tok, std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) fail(line, "bad number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line, "bad number '" + tok + "'");
  }
}

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  long long v = parse_int(tok, line);
  if (v < 0) fail(line, "negative count '" + tok + "'");
  return static_cast<std::size_t>(v);
}

// "f3" or "3" -> zero-based fiber index
inline FiberIndex parse_fiber(std::string tok, std::size_t line,
                              std::size_t num_fibers) {
  if (!tok.empty() && tok.front() == 'f') tok.erase(0, 1);
  long long v = parse_int(tok, line);
  if (v < 1 || static_cast<std::size_t>(v) > num_fibers) {
    fail(line, "fiber f" + tok + " out of range 1.." +
                   std::to_string(num_fibers));
  }
  return static_cast<FiberIndex>(v - 1);
}

// "7:" -> 7
inline long long parse_id_colon(std::string tok, std::size_t line) {
  if (tok.empty() || tok.back() != ':') fail(line, "expected '<id>:'");
  tok.pop_back();
  return parse_int(tok, line);
}

}  // namespace detail

/// Parses a bare instance and validates it against its declared limits.
inline Instance read_spn(std::istream& in) {
  std::size_t line_no = 0;
  bool seen_header = false;
  std::optional<std::size_t> fibers;
  Limits limits;
  std::vector<std::vector<FiberIndex>> paths;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto toks = detail::tokenize(line);
    if (detail::skip_line(toks)) continue;
    const auto& key = toks[0];
    if (!seen_header) {
      if (key != "spn" || toks.size() != 2 || toks[1] != "1") {
        detail::fail(line_no, "expected header 'spn 1'");
      }
      seen_header = true;
    } else if (key == "fibers" || key == "w" || key == "k") {
      if (toks.size() != 2) detail::fail(line_no, "expected '" + key + " N'");
      if (!paths.empty()) detail::fail(line_no, key + " must precede paths");
      auto v = detail::parse_count(toks[1], line_no);
      if (key == "fibers") {
        fibers = v;
      } else {
        if (v < 1) detail::fail(line_no, key + " must be at least 1");
        (key == "w" ? limits.W : limits.K) = v;
      }
    } else if (key == "path") {
      if (!fibers) detail::fail(line_no, "'fibers' must precede paths");
      if (toks.size() < 2) detail::fail(line_no, "expected 'path <id>:'");
      auto id = detail::parse_id_colon(toks[1], line_no);
      if (id != static_cast<long long>(paths.size()) + 1) {
        detail::fail(line_no, "path ids must run 1..n in order");
      }
      std::vector<FiberIndex> used;
      for (std::size_t t = 2; t < toks.size(); ++t) {
        auto f = detail::parse_fiber(toks[t], line_no, *fibers);
        if (std::find(used.begin(), used.end(), f) != used.end()) {
          detail::fail(line_no, "duplicate fiber " + toks[t]);
        }
        used.push_back(f);
      }
      paths.push_back(std::move(used));
    } else {
      detail::fail(line_no, "unknown directive '" + key + "'");
    }
  }
  if (!seen_header) throw InputError("empty instance file");
  if (!fibers) throw InputError("missing 'fibers' line");
  Instance inst{SurvivalMatrix(*fibers, paths), limits};
  inst.matrix.validate(inst.limits);
  return inst;
}

/// Canonical writer: read_spn(write_spn(x)) == x and the text round-trips
/// byte for byte.
inline void write_spn(std::ostream& out, const Instance& inst) {
  const auto& mat = inst.matrix;
  out << "spn 1\n";
  out << "fibers " << mat.num_fibers() << '\n';
  if (inst.limits.W) out << "w " << *inst.limits.W << '\n';
  if (inst.limits.K) out << "k " << *inst.limits.K << '\n';
  for (PathIndex j = 0; j < mat.num_paths(); ++j) {
    out << "path " << j + 1 << ':';
    const auto& u = mat.used_fibers(j);
    for (auto i = u.find_first(); i != Bits::npos; i = u.find_next(i)) {
      out << " f" << i + 1;
    }
    out << '\n';
  }
}

inline std::string to_spn(const Instance& inst) {
  std::ostringstream out;
  write_spn(out, inst);
  return out.str();
}

inline Instance spn_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_spn(in);
}

inline LayeredNetwork read_lnet(std::istream& in) {
  enum class Section { none, pfibers, llinks };
  Section section = Section::none;
  std::size_t line_no = 0;
  std::vector<NodeId> pnodes, lnodes;
  std::vector<Edge> fibers, links;
  std::vector<std::vector<std::string>> routes;  // resolved once m is known
  std::vector<std::size_t> route_lines;
  std::optional<std::pair<NodeId, NodeId>> st;
  bool any_directive = false;
  bool directed = false;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto toks = detail::tokenize(line);
    if (detail::skip_line(toks)) continue;
    const auto& key = toks[0];
    const bool header_allowed = !any_directive;
    any_directive = true;
    if (key == "lnet") {
      if (!header_allowed) detail::fail(line_no, "header must come first");
      if (toks.size() != 2 || toks[1] != "1") {
        detail::fail(line_no, "unsupported lnet version");
      }
    } else if (key == "pnodes" || key == "lnodes") {
      section = Section::none;
      auto& dst = key == "pnodes" ? pnodes : lnodes;
      for (std::size_t t = 1; t < toks.size(); ++t) {
        dst.push_back(detail::parse_int(toks[t], line_no));
      }
    } else if (key == "directed") {
      section = Section::none;
      if (toks.size() != 1) detail::fail(line_no, "'directed' takes no value");
      directed = true;
    } else if (key == "pfibers") {
      section = Section::pfibers;
    } else if (key == "llinks") {
      section = Section::llinks;
    } else if (key == "st") {
      section = Section::none;
      if (toks.size() != 3) detail::fail(line_no, "expected 'st s t'");
      st = {detail::parse_int(toks[1], line_no),
            detail::parse_int(toks[2], line_no)};
    } else if (section == Section::pfibers) {
      if (toks.size() != 3) detail::fail(line_no, "expected 'id u v'");
      if (detail::parse_int(toks[0], line_no) !=
          static_cast<long long>(fibers.size()) + 1) {
        detail::fail(line_no, "fiber ids must run 1..m in order");
      }
      fibers.push_back({detail::parse_int(toks[1], line_no),
                        detail::parse_int(toks[2], line_no)});
    } else if (section == Section::llinks) {
      if (toks.size() < 3) detail::fail(line_no, "expected 'id u v: fibers'");
      if (detail::parse_int(toks[0], line_no) !=
          static_cast<long long>(links.size()) + 1) {
        detail::fail(line_no, "logical link ids must run 1..n in order");
      }
      links.push_back({detail::parse_int(toks[1], line_no),
                       detail::parse_id_colon(toks[2], line_no)});
      routes.emplace_back(toks.begin() + 3, toks.end());
      route_lines.push_back(line_no);
    } else {
      detail::fail(line_no, "unexpected '" + key + "'");
    }
  }
  if (!st) throw InputError("missing 'st s t' line");
  LightpathRouting routing;
  for (std::size_t k = 0; k < routes.size(); ++k) {
    std::vector<FiberIndex> r;
    for (const auto& tok : routes[k]) {
      std::string digits = tok.front() == 'f' ? tok.substr(1) : tok;
      auto v = detail::parse_int(digits, route_lines[k]);
      if (v < 1 || static_cast<std::size_t>(v) > fibers.size()) {
        throw RoutingError("line " + std::to_string(route_lines[k]) +
                           ": logical link " + std::to_string(k + 1) +
                           " uses unknown fiber f" + digits);
      }
      r.push_back(static_cast<FiberIndex>(v - 1));
    }
    routing.fibers_of_link.push_back(std::move(r));
  }
  return LayeredNetwork(PhysicalTopology(std::move(pnodes), std::move(fibers)),
                        LogicalTopology(std::move(lnodes), std::move(links),
                                        st->first, st->second, directed),
                        std::move(routing));
}

inline void write_lnet(std::ostream& out, const LayeredNetwork& net) {
  out << "lnet 1\npnodes";
  for (NodeId x : net.physical().nodes()) out << ' ' << x;
  out << "\npfibers\n";
  const auto& fibers = net.physical().fibers();
  for (std::size_t i = 0; i < fibers.size(); ++i) {
    out << i + 1 << ' ' << fibers[i].u << ' ' << fibers[i].v << '\n';
  }
  out << "lnodes";
  for (NodeId x : net.logical().nodes()) out << ' ' << x;
  if (net.logical().directed()) out << "\ndirected";
  out << "\nllinks\n";
  const auto& links = net.logical().links();
  for (std::size_t k = 0; k < links.size(); ++k) {
    out << k + 1 << ' ' << links[k].u << ' ' << links[k].v << ':';
    for (FiberIndex i : net.route(k)) out << ' ' << i + 1;
    out << '\n';
  }
  out << "st " << net.logical().source() << ' ' << net.logical().sink()
      << '\n';
}

inline std::string to_lnet(const LayeredNetwork& net) {
  std::ostringstream out;
  write_lnet(out, net);
  return out.str();
}

inline LayeredNetwork lnet_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_lnet(in);
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

/// Loads a .spn file as a catalog of parallel s-t paths, enforcing declared
/// W (per-fiber load and the W*m path count) and K.
inline PathCatalog load_parallel_paths(const std::string& path) {
  auto in = open_input(path);
  return make_parallel_catalog(read_spn(in));
}

/// True when the first significant token of the stream is "spn".
inline bool looks_like_spn(std::istream& in) {
  const auto start = in.tellg();
  bool spn = false;
  for (std::string line; std::getline(in, line);) {
    auto toks = detail::tokenize(line);
    if (detail::skip_line(toks)) continue;
    spn = toks[0] == "spn";
    break;
  }
  in.clear();
  in.seekg(start);
  return spn;
}

}  // namespace survpath::io
