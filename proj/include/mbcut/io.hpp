#pragma once

// Plain-text instance format, one record per line, "#" starts a comment:
//
//   p (mbcut|skew|dfas|chain|wcut) <n> <m> <l>
//   b <k_1> ... <k_l>            budgets            (mbcut, skew, dfas)
//   x <v> ...                    source set         (mbcut)
//   y <v> ...                    target set         (mbcut)
//   t <s_i> <t_i>                terminal pair, repeated in order (skew)
//   s <s> <t>                    terminals          (chain, wcut)
//   k <k>                        cardinality bound  (chain, wcut)
//   w <w>                        weight bound       (wcut)
//   a <tail> <head> [c <color> ...] [wt <weight>]   arc; file order = arc id
//   q <arc-id> ...               one path of the partition, repeated (chain)
//
// For chain instances the <l> field of the p line is the path length bound;
// chain and wcut graphs are colorless. All integers are decimal ASCII.
// Trailing garbage on any line is rejected.

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mbcut/graph.hpp"

namespace mbcut {

struct ParseError : Error {
  int line = 0;
  ParseError(int line_number, const std::string& msg)
      : Error("line " + std::to_string(line_number) + ": " + msg),
        line(line_number) {}
};

namespace detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
  // Strip comment, then split on blanks.
  if (auto pos = line.find('#'); pos != std::string_view::npos) {
    line = line.substr(0, pos);
  }
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

inline std::int64_t parse_int(std::string_view tok, int line,
                              const std::string& what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer for " + what + ", got '" +
                               std::string(tok) + "'");
  }
  return value;
}

inline int parse_bounded(std::string_view tok, int line,
                         const std::string& what, std::int64_t lo,
                         std::int64_t hi) {
  std::int64_t v = parse_int(tok, line, what);
  if (v < lo || v > hi) {
    throw ParseError(line, what + " " + std::to_string(v) +
                               " out of range " + std::to_string(lo) + ".." +
                               std::to_string(hi));
  }
  return static_cast<int>(v);
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  using detail::parse_bounded;
  using detail::parse_int;

  std::string kind;
  int n = 0, m = 0, ell = 0;
  bool saw_p = false;

  std::optional<std::vector<int>> budgets;
  std::optional<std::vector<int>> xs, ys;
  std::vector<std::pair<int, int>> pairs;
  std::optional<std::pair<int, int>> st;
  std::optional<int> kbound;
  std::optional<std::int64_t> wbound;
  std::vector<Arc> arcs;
  std::vector<std::int64_t> weights;
  std::vector<std::vector<int>> paths;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto tok = detail::tokenize(line);
    if (tok.empty()) continue;
    const std::string_view rec = tok[0];

    if (rec == "p") {
      if (saw_p) throw ParseError(line_no, "duplicate p line");
      if (tok.size() != 5) {
        throw ParseError(line_no, "p line needs: p <kind> <n> <m> <l>");
      }
      kind = std::string(tok[1]);
      if (kind != "mbcut" && kind != "skew" && kind != "dfas" &&
          kind != "chain" && kind != "wcut") {
        throw ParseError(line_no, "unknown instance kind '" + kind + "'");
      }
      n = parse_bounded(tok[2], line_no, "vertex count", 0, 100000000);
      m = parse_bounded(tok[3], line_no, "arc count", 0, 100000000);
      if (kind == "chain") {
        ell = parse_bounded(tok[4], line_no, "path length bound", 1, 1000000);
      } else if (kind == "wcut") {
        ell = parse_bounded(tok[4], line_no, "color count", 0, 0);
      } else {
        ell = parse_bounded(tok[4], line_no, "color count", 0, kMaxColors);
      }
      saw_p = true;
      continue;
    }
    if (!saw_p) throw ParseError(line_no, "first record must be the p line");

    if (rec == "b") {
      if (budgets) throw ParseError(line_no, "duplicate b line");
      if (kind != "mbcut" && kind != "skew" && kind != "dfas") {
        throw ParseError(line_no, "b line not valid for kind " + kind);
      }
      std::vector<int> vals;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        vals.push_back(
            parse_bounded(tok[i], line_no, "budget", 0, 1000000000));
      }
      if (static_cast<int>(vals.size()) != ell) {
        throw ParseError(line_no, "expected " + std::to_string(ell) +
                                      " budget values, got " +
                                      std::to_string(vals.size()));
      }
      budgets = std::move(vals);
    } else if (rec == "x" || rec == "y") {
      if (kind != "mbcut") {
        throw ParseError(line_no,
                         std::string(rec) + " line not valid for kind " + kind);
      }
      auto& slot = rec == "x" ? xs : ys;
      if (slot) throw ParseError(line_no, "duplicate " + std::string(rec) +
                                              " line");
      std::vector<int> vs;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        vs.push_back(parse_bounded(tok[i], line_no, "vertex", 1, n));
      }
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      slot = std::move(vs);
    } else if (rec == "t") {
      if (kind != "skew") {
        throw ParseError(line_no, "t line not valid for kind " + kind);
      }
      if (tok.size() != 3) throw ParseError(line_no, "t line needs: t <s> <t>");
      int s = parse_bounded(tok[1], line_no, "terminal", 1, n);
      int t = parse_bounded(tok[2], line_no, "terminal", 1, n);
      pairs.emplace_back(s, t);
    } else if (rec == "s") {
      if (kind != "chain" && kind != "wcut") {
        throw ParseError(line_no, "s line not valid for kind " + kind);
      }
      if (st) throw ParseError(line_no, "duplicate s line");
      if (tok.size() != 3) throw ParseError(line_no, "s line needs: s <s> <t>");
      st = {parse_bounded(tok[1], line_no, "terminal", 1, n),
            parse_bounded(tok[2], line_no, "terminal", 1, n)};
    } else if (rec == "k") {
      if (kind != "chain" && kind != "wcut") {
        throw ParseError(line_no, "k line not valid for kind " + kind);
      }
      if (kbound) throw ParseError(line_no, "duplicate k line");
      if (tok.size() != 2) throw ParseError(line_no, "k line needs: k <k>");
      kbound = parse_bounded(tok[1], line_no, "k", 0, 1000000000);
    } else if (rec == "w") {
      if (kind != "wcut") {
        throw ParseError(line_no, "w line not valid for kind " + kind);
      }
      if (wbound) throw ParseError(line_no, "duplicate w line");
      if (tok.size() != 2) throw ParseError(line_no, "w line needs: w <w>");
      wbound = parse_int(tok[1], line_no, "w");
      if (*wbound < 0) throw ParseError(line_no, "w must be nonnegative");
    } else if (rec == "a") {
      if (tok.size() < 3) {
        throw ParseError(line_no, "a line needs at least: a <tail> <head>");
      }
      Arc arc;
      arc.tail = parse_bounded(tok[1], line_no, "tail", 1, n);
      arc.head = parse_bounded(tok[2], line_no, "head", 1, n);
      std::int64_t weight = 1;
      std::size_t i = 3;
      if (i < tok.size() && tok[i] == "c") {
        if (kind == "chain" || kind == "wcut") {
          throw ParseError(line_no, "colors not allowed on " + kind + " arcs");
        }
        ++i;
        bool any = false;
        while (i < tok.size() && tok[i] != "wt") {
          int color = parse_bounded(tok[i], line_no, "color", 1, kMaxColors);
          if (color > ell) {
            throw ParseError(line_no, "color " + std::to_string(color) +
                                          " exceeds l=" + std::to_string(ell));
          }
          arc.colors |= color_bit(color);
          any = true;
          ++i;
        }
        if (!any) throw ParseError(line_no, "c group lists no colors");
      }
      if (i < tok.size() && tok[i] == "wt") {
        if (kind != "wcut") {
          throw ParseError(line_no, "weights only allowed on wcut arcs");
        }
        ++i;
        if (i >= tok.size()) throw ParseError(line_no, "wt needs a value");
        weight = parse_int(tok[i], line_no, "weight");
        if (weight < 1) throw ParseError(line_no, "weights must be >= 1");
        ++i;
      }
      if (i != tok.size()) {
        throw ParseError(line_no, "trailing garbage on a line: '" +
                                      std::string(tok[i]) + "'");
      }
      arcs.push_back(arc);
      if (kind == "wcut") weights.push_back(weight);
    } else if (rec == "q") {
      if (kind != "chain") {
        throw ParseError(line_no, "q line not valid for kind " + kind);
      }
      std::vector<int> path;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        path.push_back(parse_bounded(tok[i], line_no, "arc id", 1, m));
      }
      if (path.empty()) throw ParseError(line_no, "q line lists no arcs");
      paths.push_back(std::move(path));
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(rec) + "'");
    }
  }

  if (!saw_p) throw ParseError(1, "missing p line");
  if (static_cast<int>(arcs.size()) != m) {
    throw ParseError(line_no, "p line declares " + std::to_string(m) +
                                  " arcs, file has " +
                                  std::to_string(arcs.size()));
  }

  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw ParseError(line_no, "missing " + what + " line");
  };

  try {
    if (kind == "mbcut" || kind == "skew" || kind == "dfas") {
      if (ell > 0) need(budgets.has_value(), "b");
      Budgets b{budgets.value_or(std::vector<int>{})};
      for (int v : b.values) {
        if (v < 1) throw ParseError(line_no, "top-level budgets must be >= 1");
      }
      ColoredDigraph g(n, ell, std::move(arcs));
      if (kind == "mbcut") {
        need(xs.has_value(), "x");
        need(ys.has_value(), "y");
        CutInstance inst{std::move(g), std::move(*xs), std::move(*ys),
                         std::move(b)};
        inst.validate(true);
        return inst;
      }
      if (kind == "skew") {
        SkewInstance inst{std::move(g), std::move(b), std::move(pairs)};
        inst.validate(true);
        return inst;
      }
      DfasInstance inst{std::move(g), std::move(b)};
      inst.validate(true);
      return inst;
    }
    if (kind == "chain") {
      need(st.has_value(), "s");
      need(kbound.has_value(), "k");
      ColoredDigraph g(n, 0, std::move(arcs));
      ChainInstance inst{std::move(g), st->first,        st->second,
                         std::move(paths), ell, *kbound};
      inst.validate();
      return inst;
    }
    need(st.has_value(), "s");
    need(kbound.has_value(), "k");
    need(wbound.has_value(), "w");
    ColoredDigraph g(n, 0, std::move(arcs));
    WeightedCutInstance inst{std::move(g), std::move(weights), st->first,
                             st->second,   *kbound,            *wbound};
    inst.validate();
    return inst;
  } catch (const ValidationError& e) {
    throw ParseError(line_no, e.what());
  }
}

namespace detail {

inline void write_arcs(std::ostringstream& os, const ColoredDigraph& g,
                       const std::vector<std::int64_t>* weights) {
  for (int id = 1; id <= g.arc_count(); ++id) {
    const Arc& a = g.arc(id);
    os << "a " << a.tail << ' ' << a.head;
    if (a.colors) {
      os << " c";
      for (int color = 1; color <= g.color_count; ++color) {
        if (g.has_color(id, color)) os << ' ' << color;
      }
    }
    if (weights) os << " wt " << (*weights)[id - 1];
    os << '\n';
  }
}

inline void write_ints(std::ostringstream& os, char rec,
                       const std::vector<int>& vals) {
  os << rec;
  for (int v : vals) os << ' ' << v;
  os << '\n';
}

}  // namespace detail

// Canonical form: fixed record order, color lists ascending, no comments.
inline std::string write_instance(const Instance& instance) {
  std::ostringstream os;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        const ColoredDigraph& g = inst.graph;
        if constexpr (std::is_same_v<T, CutInstance>) {
          os << "p mbcut " << g.vertex_count << ' ' << g.arc_count() << ' '
             << g.color_count << '\n';
          if (g.color_count > 0) detail::write_ints(os, 'b', inst.budgets.values);
          detail::write_ints(os, 'x', inst.x);
          detail::write_ints(os, 'y', inst.y);
          detail::write_arcs(os, g, nullptr);
        } else if constexpr (std::is_same_v<T, SkewInstance>) {
          os << "p skew " << g.vertex_count << ' ' << g.arc_count() << ' '
             << g.color_count << '\n';
          if (g.color_count > 0) detail::write_ints(os, 'b', inst.budgets.values);
          for (auto [s, t] : inst.pairs) {
            os << "t " << s << ' ' << t << '\n';
          }
          detail::write_arcs(os, g, nullptr);
        } else if constexpr (std::is_same_v<T, DfasInstance>) {
          os << "p dfas " << g.vertex_count << ' ' << g.arc_count() << ' '
             << g.color_count << '\n';
          if (g.color_count > 0) detail::write_ints(os, 'b', inst.budgets.values);
          detail::write_arcs(os, g, nullptr);
        } else if constexpr (std::is_same_v<T, ChainInstance>) {
          os << "p chain " << g.vertex_count << ' ' << g.arc_count() << ' '
             << inst.path_length_bound << '\n';
          os << "s " << inst.s << ' ' << inst.t << '\n';
          os << "k " << inst.k << '\n';
          detail::write_arcs(os, g, nullptr);
          for (const auto& p : inst.paths) {
            os << 'q';
            for (int id : p) os << ' ' << id;
            os << '\n';
          }
        } else {
          os << "p wcut " << g.vertex_count << ' ' << g.arc_count() << " 0\n";
          os << "s " << inst.s << ' ' << inst.t << '\n';
          os << "k " << inst.k << '\n';
          os << "w " << inst.w << '\n';
          detail::write_arcs(os, g, &inst.weights);
        }
      },
      instance);
  return os.str();
}

}  // namespace mbcut
