// mbcut: exact solvers for multi-budgeted directed cut problems.
//
// Subcommands: solve, skew, dfas, important, flow, oracle, reduce, gen,
// analyze. Exit codes: 0 = yes/found/pass, 1 = no/none/fail, 2 = error.
// --json emits a versioned machine-readable report; every field except the
// elapsed-time "ms" is byte-stable for fixed inputs and flags.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbcut/analysis.hpp"
#include "mbcut/graph.hpp"
#include "mbcut/important.hpp"
#include "mbcut/io.hpp"
#include "mbcut/oracle.hpp"
#include "mbcut/reductions.hpp"
#include "mbcut/skew_dfas.hpp"
#include "mbcut/solver.hpp"
#include "mbcut/version.hpp"
#include "mbcut/zflow.hpp"

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string basename_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

std::string digest_of(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

const char* kind_name(const mbcut::Instance& inst) {
  return std::visit(
      [](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, mbcut::CutInstance>) return "mbcut";
        if constexpr (std::is_same_v<T, mbcut::SkewInstance>) return "skew";
        if constexpr (std::is_same_v<T, mbcut::DfasInstance>) return "dfas";
        if constexpr (std::is_same_v<T, mbcut::ChainInstance>) return "chain";
        return "wcut";
      },
      inst);
}

const mbcut::ColoredDigraph& graph_of(const mbcut::Instance& inst) {
  return std::visit(
      [](const auto& i) -> const mbcut::ColoredDigraph& { return i.graph; },
      inst);
}

struct Loaded {
  mbcut::Instance instance;
  std::string file;    // basename
  std::string digest;  // content hash of the raw bytes
};

Loaded load_instance(const std::string& path) {
  std::string bytes = read_file(path);
  return Loaded{mbcut::parse_instance(bytes), basename_of(path),
                digest_of(bytes)};
}

template <class T>
const T& expect_kind(const Loaded& loaded, const char* command) {
  if (const T* inst = std::get_if<T>(&loaded.instance)) return *inst;
  throw mbcut::ValidationError(std::string(command) + " cannot run on a '" +
                               kind_name(loaded.instance) + "' instance");
}

json report_header(const std::string& command, const Loaded& loaded) {
  const mbcut::ColoredDigraph& g = graph_of(loaded.instance);
  json r;
  r["schema"] = 1;
  r["version"] = mbcut::kVersion;
  r["command"] = command;
  r["file"] = loaded.file;
  r["digest"] = loaded.digest;
  r["kind"] = kind_name(loaded.instance);
  r["vertices"] = g.vertex_count;
  r["arcs"] = g.arc_count();
  r["colors"] = g.color_count;
  return r;
}

void print_report(const json& r) { std::cout << r.dump(2) << '\n'; }

void print_ids(const char* label, const std::vector<int>& ids) {
  std::cout << label;
  for (int id : ids) std::cout << ' ' << id;
  std::cout << '\n';
}

// Shared answer plumbing for the decision subcommands.
int finish_decision(json& r, bool as_json, const mbcut::ColoredDigraph& g,
                    const mbcut::Budgets& budgets,
                    const std::optional<mbcut::CutSet>& cut,
                    std::int64_t ms, const json* extra_stats = nullptr) {
  const bool yes = cut.has_value();
  std::vector<int> usage;
  if (yes) {
    usage = mbcut::budget_usage(g, *cut, budgets).usage;
  }
  if (as_json) {
    r["answer"] = yes ? "yes" : "no";
    if (yes) {
      r["cut"] = cut->edges;
      r["usage"] = usage;
    }
    json stats = extra_stats ? *extra_stats : json::object();
    stats["ms"] = ms;
    r["stats"] = stats;
    print_report(r);
  } else {
    std::cout << "answer " << (yes ? "yes" : "no") << '\n';
    if (yes) {
      print_ids("cut", cut->edges);
      std::cout << "usage";
      for (std::size_t i = 0; i < usage.size(); ++i) {
        std::cout << ' ' << usage[i] << '/' << budgets.values[i];
      }
      std::cout << '\n';
    }
    if (extra_stats) {
      std::cout << "stats";
      for (auto it = extra_stats->begin(); it != extra_stats->end(); ++it) {
        std::cout << ' ' << it.key() << '=' << it.value().dump();
      }
      std::cout << " ms=" << ms << '\n';
    }
  }
  return yes ? 0 : 1;
}

// --- solve ------------------------------------------------------------------

int run_solve(const std::string& path, bool as_json, bool with_stats,
              bool parallel) {
  Loaded loaded = load_instance(path);
  const auto& inst = expect_kind<mbcut::CutInstance>(loaded, "solve");
  mbcut::SolveOptions opts;
  opts.parallel = parallel;
  mbcut::SolveStats stats;
  auto start = Clock::now();
  std::optional<mbcut::CutSet> cut = mbcut::solve_mbcut(inst, opts, &stats);
  std::int64_t ms = ms_since(start);
  json r = report_header("solve", loaded);
  json extra;
  extra["nodes"] = stats.nodes;
  extra["flow_calls"] = stats.flow_calls;
  extra["depth_max"] = stats.depth_max;
  return finish_decision(r, as_json, inst.graph, inst.budgets, cut, ms,
                         (as_json || with_stats) ? &extra : nullptr);
}

// --- skew / dfas ------------------------------------------------------------

int run_skew(const std::string& path, bool as_json) {
  Loaded loaded = load_instance(path);
  const auto& inst = expect_kind<mbcut::SkewInstance>(loaded, "skew");
  auto start = Clock::now();
  std::optional<mbcut::CutSet> cut = mbcut::solve_skew(inst);
  std::int64_t ms = ms_since(start);
  json r = report_header("skew", loaded);
  return finish_decision(r, as_json, inst.graph, inst.budgets, cut, ms);
}

int run_dfas(const std::string& path, bool as_json) {
  Loaded loaded = load_instance(path);
  const auto& inst = expect_kind<mbcut::DfasInstance>(loaded, "dfas");
  auto start = Clock::now();
  std::optional<mbcut::CutSet> cut = mbcut::solve_dfas(inst);
  std::int64_t ms = ms_since(start);
  json r = report_header("dfas", loaded);
  return finish_decision(r, as_json, inst.graph, inst.budgets, cut, ms);
}

// --- important --------------------------------------------------------------

int run_important(const std::string& path, const std::string& filter,
                  bool as_json) {
  Loaded loaded = load_instance(path);
  const auto& inst = expect_kind<mbcut::CutInstance>(loaded, "important");
  auto start = Clock::now();
  mbcut::CutFamily family = mbcut::enumerate_candidates(inst);
  const int candidates = family.size();
  if (filter != "none") {
    auto tier = filter == "exact" ? mbcut::FilterTier::exact
                                  : mbcut::FilterTier::relative;
    family = mbcut::filter_important(inst, family, tier,
                                     mbcut::SizeGuard::from_env());
  }
  std::int64_t ms = ms_since(start);
  if (as_json) {
    json r = report_header("important", loaded);
    r["filter"] = filter;
    r["candidates"] = candidates;
    r["family_size"] = family.size();
    json cuts = json::array();
    for (const auto& c : family.cuts) cuts.push_back(c.edges);
    r["family"] = cuts;
    r["stats"] = {{"ms", ms}};
    print_report(r);
  } else {
    std::cout << "candidates " << candidates << '\n';
    std::cout << "family " << family.size() << '\n';
    for (const auto& c : family.cuts) print_ids("cut", c.edges);
  }
  return 0;
}

// --- flow -------------------------------------------------------------------

int run_flow(const std::string& path, const std::string& z_mode, int k,
             bool as_json) {
  Loaded loaded = load_instance(path);
  const auto& inst = expect_kind<mbcut::CutInstance>(loaded, "flow");
  const mbcut::ColoredDigraph& g = inst.graph;
  mbcut::EdgeSet z(g.arc_count());
  if (z_mode == "colored") {
    z = g.colored_arcs();
  } else {
    for (int id = 1; id <= g.arc_count(); ++id) z.insert(id);
  }
  if (k < 0) k = inst.budgets.total();
  auto start = Clock::now();
  std::optional<mbcut::FlowCertificate> cert =
      mbcut::max_flow_z(g, inst.x, inst.y, z, k);
  std::int64_t ms = ms_since(start);
  if (as_json) {
    json r = report_header("flow", loaded);
    r["z"] = z_mode;
    r["k"] = k;
    r["answer"] = cert.has_value() ? "yes" : "no";
    if (cert.has_value()) {
      r["lambda"] = cert->lambda;
      json paths = json::array();
      for (const auto& p : cert->paths) paths.push_back(p);
      r["paths"] = paths;
      r["bottleneck"] = cert->bottleneck;
      r["closest"] = cert->closest.edges;
    }
    r["stats"] = {{"ms", ms}};
    print_report(r);
  } else if (cert.has_value()) {
    std::cout << "lambda " << cert->lambda << '\n';
    for (const auto& p : cert->paths) print_ids("path", p);
    print_ids("bottleneck", cert->bottleneck);
    print_ids("closest", cert->closest.edges);
  } else {
    std::cout << "answer no\n";
  }
  return cert.has_value() ? 0 : 1;
}

// --- oracle -----------------------------------------------------------------

int run_oracle_solve(const std::string& path, bool as_json,
                     bool chain_only) {
  Loaded loaded = load_instance(path);
  const mbcut::SizeGuard guard = mbcut::SizeGuard::from_env();
  if (chain_only) {
    expect_kind<mbcut::ChainInstance>(loaded, "oracle chain");
  }
  auto start = Clock::now();
  std::optional<mbcut::CutSet> cut;
  const mbcut::ColoredDigraph& g = graph_of(loaded.instance);
  mbcut::Budgets budgets;
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, mbcut::CutInstance>) {
          cut = mbcut::brute_solve_mbcut(inst, guard);
          budgets = inst.budgets;
        } else if constexpr (std::is_same_v<T, mbcut::SkewInstance>) {
          cut = mbcut::brute_solve_skew(inst, guard);
          budgets = inst.budgets;
        } else if constexpr (std::is_same_v<T, mbcut::DfasInstance>) {
          cut = mbcut::brute_solve_dfas(inst, guard);
          budgets = inst.budgets;
        } else if constexpr (std::is_same_v<T, mbcut::ChainInstance>) {
          cut = mbcut::brute_solve_chain(inst, guard);
        } else {
          cut = mbcut::brute_solve_weighted(inst, guard);
        }
      },
      loaded.instance);
  std::int64_t ms = ms_since(start);
  std::string command = chain_only ? "oracle chain" : "oracle solve";
  json r = report_header(command, loaded);
  const auto* w = std::get_if<mbcut::WeightedCutInstance>(&loaded.instance);
  if (w && cut.has_value() && as_json) {
    r["weight"] = w->weight_of(*cut);
  }
  int code = finish_decision(r, as_json, g, budgets, cut, ms);
  if (w && cut.has_value() && !as_json) {
    std::cout << "weight " << w->weight_of(*cut) << '\n';
  }
  return code;
}

int run_oracle_minimal_cuts(const std::string& path, bool as_json) {
  Loaded loaded = load_instance(path);
  const auto& inst =
      expect_kind<mbcut::CutInstance>(loaded, "oracle minimal-cuts");
  // colorless instances have no budget to bound the size, so take them all
  const int max_size = inst.graph.color_count > 0 ? inst.budgets.total()
                                                  : inst.graph.arc_count();
  mbcut::CutFamily family = mbcut::brute_minimal_cuts(
      inst.graph, inst.x, inst.y, max_size, mbcut::SizeGuard::from_env());
  if (as_json) {
    json r = report_header("oracle minimal-cuts", loaded);
    r["count"] = family.size();
    json cuts = json::array();
    for (const auto& c : family.cuts) cuts.push_back(c.edges);
    r["cuts"] = cuts;
    print_report(r);
  } else {
    std::cout << "count " << family.size() << '\n';
    for (const auto& c : family.cuts) print_ids("cut", c.edges);
  }
  return 0;
}

int run_oracle_families(const std::string& path, bool as_json) {
  Loaded loaded = load_instance(path);
  const mbcut::SizeGuard guard = mbcut::SizeGuard::from_env();
  mbcut::ClosestFamilies fams;
  if (const auto* w = std::get_if<mbcut::WeightedCutInstance>(&loaded.instance)) {
    fams = mbcut::brute_closest_families_weighted(*w, guard);
  } else if (const auto* c = std::get_if<mbcut::ChainInstance>(&loaded.instance)) {
    fams = mbcut::brute_closest_families_chain(*c, guard);
  } else {
    throw mbcut::ValidationError(
        "oracle families needs a 'wcut' or 'chain' instance");
  }
  if (as_json) {
    json r = report_header("oracle families", loaded);
    r["all_size"] = fams.all.size();
    r["closest_size"] = fams.closest.size();
    json all = json::array();
    for (const auto& c : fams.all.cuts) all.push_back(c.edges);
    json closest = json::array();
    for (const auto& c : fams.closest.cuts) closest.push_back(c.edges);
    r["all"] = all;
    r["closest"] = closest;
    print_report(r);
  } else {
    std::cout << "all " << fams.all.size() << '\n';
    std::cout << "closest " << fams.closest.size() << '\n';
    for (const auto& c : fams.closest.cuts) print_ids("cut", c.edges);
  }
  return 0;
}

// --- reduce -----------------------------------------------------------------

void emit_reduction(const std::string& command, const Loaded* loaded,
                    const std::string& input_file,
                    const std::string& input_digest,
                    const std::string& output_text,
                    const mbcut::ReductionMap& map, bool as_json) {
  if (!as_json) {
    std::cout << output_text;
    return;
  }
  json r;
  if (loaded) {
    r = report_header(command, *loaded);
  } else {
    r["schema"] = 1;
    r["version"] = mbcut::kVersion;
    r["command"] = command;
    r["file"] = input_file;
    r["digest"] = input_digest;
  }
  r["output"] = output_text;
  json fwd = json::object();
  for (const auto& [key, ids] : map.forward) fwd[key] = ids;
  r["map"] = fwd;
  r["notes"] = map.notes;
  print_report(r);
}

int run_reduce_vc(const std::string& path, bool as_json) {
  std::string bytes = read_file(path);
  mbcut::CbvcInstance inst = mbcut::parse_cbvc(bytes);
  mbcut::CutReduction red = mbcut::vc_to_mbcut(inst);
  emit_reduction("reduce vc", nullptr, basename_of(path), digest_of(bytes),
                 mbcut::write_instance(red.instance), red.map, as_json);
  return 0;
}

int run_reduce_to_weighted(const std::string& path, bool as_json) {
  Loaded loaded = load_instance(path);
  const auto& inst = expect_kind<mbcut::CutInstance>(loaded, "reduce to-weighted");
  mbcut::WeightedReduction red = mbcut::mbcut2_to_weighted(inst);
  emit_reduction("reduce to-weighted", &loaded, loaded.file, loaded.digest,
                 mbcut::write_instance(red.instance), red.map, as_json);
  return 0;
}

int run_reduce_from_weighted(const std::string& path, bool as_json) {
  Loaded loaded = load_instance(path);
  const auto& inst =
      expect_kind<mbcut::WeightedCutInstance>(loaded, "reduce from-weighted");
  mbcut::CutReduction red = mbcut::weighted_to_mbcut2(inst);
  emit_reduction("reduce from-weighted", &loaded, loaded.file, loaded.digest,
                 mbcut::write_instance(red.instance), red.map, as_json);
  return 0;
}

// --- gen --------------------------------------------------------------------

int run_gen_factorial(int k) {
  std::cout << mbcut::write_instance(mbcut::gen_factorial_family(k));
  return 0;
}

struct GenRandomArgs {
  std::string kind = "cut";
  std::uint64_t seed = 1;
  int vertices = 8;
  int arcs = 12;
  int colors = 2;
  std::vector<int> budgets;
  double density = 0.75;
  int pairs = 2;
  bool simple = false;
  int max_weight = 4;
  int k = 2;
  std::int64_t w = 5;
  int paths = 3;
  int max_path_length = 3;
};

int run_gen_random(const GenRandomArgs& args) {
  if (args.kind == "weighted") {
    mbcut::RandomWeightedSpec spec;
    spec.seed = args.seed;
    spec.vertices = args.vertices;
    spec.arcs = args.arcs;
    spec.max_weight = args.max_weight;
    spec.k = args.k;
    spec.w = args.w;
    std::cout << mbcut::write_instance(mbcut::gen_random_weighted(spec));
    return 0;
  }
  if (args.kind == "chain") {
    mbcut::RandomChainSpec spec;
    spec.seed = args.seed;
    spec.paths = args.paths;
    spec.max_path_length = args.max_path_length;
    std::cout << mbcut::write_instance(mbcut::gen_random_chain(spec));
    return 0;
  }
  mbcut::RandomSpec spec;
  spec.kind = args.kind == "skew"   ? mbcut::RandomKind::skew
              : args.kind == "dfas" ? mbcut::RandomKind::dfas
                                    : mbcut::RandomKind::cut;
  spec.seed = args.seed;
  spec.vertices = args.vertices;
  spec.arcs = args.arcs;
  spec.colors = args.colors;
  spec.budgets = args.budgets;
  spec.color_density = args.density;
  spec.pairs = args.pairs;
  spec.simple = args.simple;
  std::cout << mbcut::write_instance(mbcut::gen_random(spec));
  return 0;
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeInput {
  Loaded loaded;
  int s = 0;
  int t = 0;
  mbcut::CutFamily family;
};

mbcut::CutFamily parse_family(const std::string& text, int arc_count) {
  mbcut::CutFamily family;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line(text);
    line = line.substr(pos, nl == std::string::npos ? text.size() - pos
                                                    : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto tok = mbcut::detail::tokenize(line);
    if (tok.empty()) continue;
    if (tok[0] != "c") {
      throw mbcut::ParseError(line_no, "family records start with 'c'");
    }
    std::vector<int> ids;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      ids.push_back(mbcut::detail::parse_bounded(tok[i], line_no, "arc id", 1,
                                                 arc_count));
    }
    if (ids.empty()) {
      throw mbcut::ParseError(line_no, "family record lists no arcs");
    }
    family.add(mbcut::CutSet::from_ids(std::move(ids)));
  }
  return family;
}

// Loads the instance, resolves its terminals, and either reads the family
// file or falls back to the instance's own brute-force family: minimal cuts
// within the budget for plain cut instances, the closest family otherwise.
AnalyzeInput analyze_input(const std::string& path,
                           const std::string& family_path) {
  AnalyzeInput in{load_instance(path)};
  const mbcut::SizeGuard guard = mbcut::SizeGuard::from_env();
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, mbcut::CutInstance>) {
          if (inst.x.size() != 1 || inst.y.size() != 1) {
            throw mbcut::ValidationError(
                "analysis needs single-vertex terminal sides");
          }
          in.s = inst.x[0];
          in.t = inst.y[0];
          if (family_path.empty()) {
            const int max_size = inst.graph.color_count > 0
                                     ? inst.budgets.total()
                                     : inst.graph.arc_count();
            in.family = mbcut::brute_minimal_cuts(inst.graph, inst.x, inst.y,
                                                  max_size, guard);
          }
        } else if constexpr (std::is_same_v<T, mbcut::WeightedCutInstance>) {
          in.s = inst.s;
          in.t = inst.t;
          if (family_path.empty()) {
            in.family =
                mbcut::brute_closest_families_weighted(inst, guard).closest;
          }
        } else if constexpr (std::is_same_v<T, mbcut::ChainInstance>) {
          in.s = inst.s;
          in.t = inst.t;
          if (family_path.empty()) {
            in.family =
                mbcut::brute_closest_families_chain(inst, guard).closest;
          }
        } else {
          throw mbcut::ValidationError(
              "analysis needs an instance with two terminals");
        }
      },
      in.loaded.instance);
  if (!family_path.empty()) {
    in.family = parse_family(read_file(family_path),
                             graph_of(in.loaded.instance).arc_count());
  }
  return in;
}

const char* orient_name(mbcut::Orient o) {
  return o == mbcut::Orient::bottom ? "bottom" : "top";
}

int run_analyze_maze(const std::string& path, const std::string& family_path,
                     bool as_json) {
  AnalyzeInput in = analyze_input(path, family_path);
  const mbcut::ColoredDigraph& g = graph_of(in.loaded.instance);
  mbcut::Maze maze = mbcut::build_maze(g, in.s, in.t, in.family);
  if (as_json) {
    json r = report_header("analyze maze", in.loaded);
    json members = json::array();
    for (const auto& m : maze.members) members.push_back(m.edges);
    r["members"] = members;
    r["element_count"] = maze.element_count;
    json pairs = json::array();
    for (int u = 0; u < maze.size(); ++u) {
      for (int v = 0; v < maze.size(); ++v) {
        if (u == v) continue;
        json row;
        row["from"] = u + 1;
        row["to"] = v + 1;
        json names = json::array();
        for (mbcut::Orient o : maze.f[u][v]) names.push_back(orient_name(o));
        row["orient"] = names;
        pairs.push_back(row);
      }
    }
    r["f"] = pairs;
    print_report(r);
  } else {
    std::cout << "members " << maze.size() << '\n';
    std::cout << "elements " << maze.element_count << '\n';
    for (int u = 0; u < maze.size(); ++u) {
      for (int v = 0; v < maze.size(); ++v) {
        if (u == v) continue;
        std::cout << "f " << u + 1 << ' ' << v + 1;
        for (mbcut::Orient o : maze.f[u][v]) std::cout << ' ' << orient_name(o);
        std::cout << '\n';
      }
    }
  }
  return 0;
}

int run_analyze_bowtie(const std::string& path,
                       const std::string& family_path, int a, bool as_json) {
  AnalyzeInput in = analyze_input(path, family_path);
  const mbcut::ColoredDigraph& g = graph_of(in.loaded.instance);
  mbcut::Maze maze = mbcut::build_maze(g, in.s, in.t, in.family);
  std::optional<mbcut::Bowtie> bowtie = mbcut::find_bowtie(maze, a);
  if (bowtie.has_value() &&
      !mbcut::verify_bowtie_reachability(g, in.s, maze, *bowtie)) {
    throw mbcut::InternalError(
        "maze bowtie disagrees with its reachability form");
  }
  if (as_json) {
    json r = report_header("analyze bowtie", in.loaded);
    r["a"] = a;
    r["answer"] = bowtie.has_value() ? "yes" : "no";
    if (bowtie.has_value()) {
      json seq = json::array();
      for (int idx : bowtie->sequence) seq.push_back(idx + 1);
      r["sequence"] = seq;
      json a_parts = json::array(), b_parts = json::array();
      for (const auto& part : bowtie->a_parts) a_parts.push_back(part.edges);
      for (const auto& part : bowtie->b_parts) b_parts.push_back(part.edges);
      r["a_parts"] = a_parts;
      r["b_parts"] = b_parts;
    }
    print_report(r);
  } else {
    std::cout << "answer " << (bowtie.has_value() ? "yes" : "no") << '\n';
    if (bowtie.has_value()) {
      std::cout << "sequence";
      for (int idx : bowtie->sequence) std::cout << ' ' << idx + 1;
      std::cout << '\n';
      for (std::size_t i = 0; i < bowtie->sequence.size(); ++i) {
        std::cout << "a[" << i + 1 << ']';
        for (int id : bowtie->a_parts[i].edges) std::cout << ' ' << id;
        std::cout << "\nb[" << i + 1 << ']';
        for (int id : bowtie->b_parts[i].edges) std::cout << ' ' << id;
        std::cout << '\n';
      }
    }
  }
  return bowtie.has_value() ? 0 : 1;
}

int run_analyze_flower(const std::string& path,
                       const std::string& family_path, int b, bool as_json) {
  AnalyzeInput in = analyze_input(path, family_path);
  const mbcut::ColoredDigraph& g = graph_of(in.loaded.instance);
  mbcut::Maze maze = mbcut::build_maze(g, in.s, in.t, in.family);
  std::optional<mbcut::Flower> flower = mbcut::find_flower(maze, b);
  if (as_json) {
    json r = report_header("analyze flower", in.loaded);
    r["b"] = b;
    r["answer"] = flower.has_value() ? "yes" : "no";
    if (flower.has_value()) {
      json members = json::array();
      for (int idx : flower->members) members.push_back(idx + 1);
      r["members"] = members;
      r["orientation"] = orient_name(flower->zeta);
      r["chosen"] = flower->chosen;
    }
    print_report(r);
  } else {
    std::cout << "answer " << (flower.has_value() ? "yes" : "no") << '\n';
    if (flower.has_value()) {
      std::cout << "members";
      for (int idx : flower->members) std::cout << ' ' << idx + 1;
      std::cout << '\n';
      std::cout << "orientation " << orient_name(flower->zeta) << '\n';
      print_ids("chosen", flower->chosen);
    }
  }
  return flower.has_value() ? 0 : 1;
}

int run_analyze_bounds(const std::string& path,
                       const std::string& family_path, bool as_json) {
  AnalyzeInput in = analyze_input(path, family_path);
  mbcut::BoundReport report;
  if (const auto* w =
          std::get_if<mbcut::WeightedCutInstance>(&in.loaded.instance)) {
    report = mbcut::check_bounds_weighted(*w, in.family);
  } else if (const auto* c =
                 std::get_if<mbcut::ChainInstance>(&in.loaded.instance)) {
    report = mbcut::check_bounds_chain(*c, in.family);
  } else {
    throw mbcut::ValidationError(
        "analyze bounds needs a 'wcut' or 'chain' instance");
  }
  if (as_json) {
    json r = report_header("analyze bounds", in.loaded);
    r["pass"] = report.pass;
    r["k"] = report.k;
    r["family_size"] = report.family_size;
    r["bowtie_limit"] = report.bowtie_limit;
    r["largest_bowtie"] = report.largest_bowtie;
    r["flower_limit"] = report.flower_limit;
    r["largest_flower"] = report.largest_flower;
    r["detail"] = report.detail;
    print_report(r);
  } else {
    std::cout << "pass " << (report.pass ? "yes" : "no") << '\n';
    std::cout << "family " << report.family_size << '\n';
    std::cout << "bowtie " << report.largest_bowtie << " limit "
              << report.bowtie_limit << '\n';
    std::cout << "flower " << report.largest_flower << " limit "
              << report.flower_limit << '\n';
    if (!report.detail.empty()) std::cout << "detail " << report.detail << '\n';
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact multi-budgeted directed cut solvers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mbcut::kVersion);

  int rc = 0;

  // solve
  std::string solve_file;
  bool solve_json = false, solve_stats = false, solve_parallel = false;
  auto* solve = app.add_subcommand("solve", "decide a multi-budgeted cut instance");
  solve->add_option("file", solve_file, "instance file")->required();
  solve->add_flag("--json", solve_json, "machine-readable report");
  solve->add_flag("--stats", solve_stats, "print search statistics");
  solve->add_flag("--parallel", solve_parallel, "parallel root branches");
  solve->callback([&] { rc = run_solve(solve_file, solve_json, solve_stats, solve_parallel); });

  // skew
  std::string skew_file;
  bool skew_json = false;
  auto* skew = app.add_subcommand("skew", "decide a skew edge multicut instance");
  skew->add_option("file", skew_file, "instance file")->required();
  skew->add_flag("--json", skew_json, "machine-readable report");
  skew->callback([&] { rc = run_skew(skew_file, skew_json); });

  // dfas
  std::string dfas_file;
  bool dfas_json = false;
  auto* dfas = app.add_subcommand("dfas", "decide a feedback arc set instance");
  dfas->add_option("file", dfas_file, "instance file")->required();
  dfas->add_flag("--json", dfas_json, "machine-readable report");
  dfas->callback([&] { rc = run_dfas(dfas_file, dfas_json); });

  // important
  std::string imp_file, imp_filter = "none";
  bool imp_json = false;
  auto* important = app.add_subcommand("important", "enumerate important separator candidates");
  important->add_option("file", imp_file, "instance file")->required();
  important->add_option("--filter", imp_filter, "dominance filter tier")
      ->check(CLI::IsMember({"exact", "relative", "none"}));
  important->add_flag("--json", imp_json, "machine-readable report");
  important->callback([&] { rc = run_important(imp_file, imp_filter, imp_json); });

  // flow
  std::string flow_file, flow_z = "colored";
  int flow_k = -1;
  bool flow_json = false;
  auto* flow = app.add_subcommand("flow", "flow certificate for an instance");
  flow->add_option("file", flow_file, "instance file")->required();
  flow->add_option("--z", flow_z, "deletable arc set")
      ->check(CLI::IsMember({"all", "colored"}));
  flow->add_option("--k", flow_k, "round bound (default: budget total)");
  flow->add_flag("--json", flow_json, "machine-readable report");
  flow->callback([&] { rc = run_flow(flow_file, flow_z, flow_k, flow_json); });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force reference answers");
  oracle->require_subcommand(1);
  std::string osolve_file;
  bool osolve_json = false;
  auto* osolve = oracle->add_subcommand("solve", "exhaustive decision");
  osolve->add_option("file", osolve_file, "instance file")->required();
  osolve->add_flag("--json", osolve_json, "machine-readable report");
  osolve->callback([&] { rc = run_oracle_solve(osolve_file, osolve_json, false); });

  std::string omin_file;
  bool omin_json = false;
  auto* omin = oracle->add_subcommand("minimal-cuts", "all minimal cuts within the budget total");
  omin->add_option("file", omin_file, "instance file")->required();
  omin->add_flag("--json", omin_json, "machine-readable report");
  omin->callback([&] { rc = run_oracle_minimal_cuts(omin_file, omin_json); });

  std::string ochain_file;
  bool ochain_json = false;
  auto* ochain = oracle->add_subcommand("chain", "exhaustive chain decision");
  ochain->add_option("file", ochain_file, "instance file")->required();
  ochain->add_flag("--json", ochain_json, "machine-readable report");
  ochain->callback([&] { rc = run_oracle_solve(ochain_file, ochain_json, true); });

  std::string ofam_file;
  bool ofam_json = false;
  auto* ofam = oracle->add_subcommand("families", "solution family and its closest subfamily");
  ofam->add_option("file", ofam_file, "instance file")->required();
  ofam->add_flag("--json", ofam_json, "machine-readable report");
  ofam->callback([&] { rc = run_oracle_families(ofam_file, ofam_json); });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "instance transformations");
  reduce->require_subcommand(1);
  std::string rvc_file;
  bool rvc_json = false;
  auto* rvc = reduce->add_subcommand("vc", "two-sided vertex cover to a two-color cut instance");
  rvc->add_option("file", rvc_file, "cbvc file")->required();
  rvc->add_flag("--json", rvc_json, "wrap the instance in a report");
  rvc->callback([&] { rc = run_reduce_vc(rvc_file, rvc_json); });

  std::string rtw_file;
  bool rtw_json = false;
  auto* rtw = reduce->add_subcommand("to-weighted", "two-color cut instance to a weighted one");
  rtw->add_option("file", rtw_file, "instance file")->required();
  rtw->add_flag("--json", rtw_json, "wrap the instance in a report");
  rtw->callback([&] { rc = run_reduce_to_weighted(rtw_file, rtw_json); });

  std::string rfw_file;
  bool rfw_json = false;
  auto* rfw = reduce->add_subcommand("from-weighted", "weighted cut instance to a two-color one");
  rfw->add_option("file", rfw_file, "instance file")->required();
  rfw->add_flag("--json", rfw_json, "wrap the instance in a report");
  rfw->callback([&] { rc = run_reduce_from_weighted(rfw_file, rfw_json); });

  // gen
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  int gfac_k = 3;
  auto* gfac = gen->add_subcommand("factorial", "disjoint-paths family with k! important separators");
  gfac->add_option("--k", gfac_k, "path count (1..6)")->required();
  gfac->callback([&] { rc = run_gen_factorial(gfac_k); });

  GenRandomArgs grand;
  auto* grnd = gen->add_subcommand("random", "seeded random instance");
  grnd->add_option("--kind", grand.kind, "instance kind")
      ->check(CLI::IsMember({"cut", "skew", "dfas", "weighted", "chain"}));
  grnd->add_option("--seed", grand.seed, "generator seed");
  grnd->add_option("--vertices", grand.vertices, "vertex count");
  grnd->add_option("--arcs", grand.arcs, "arc count");
  grnd->add_option("--colors", grand.colors, "color count");
  grnd->add_option("--budgets", grand.budgets, "per-color budgets");
  grnd->add_option("--density", grand.density, "colored-arc probability");
  grnd->add_option("--pairs", grand.pairs, "terminal pairs (skew)");
  grnd->add_flag("--simple", grand.simple, "no parallel arcs or self-loops");
  grnd->add_option("--max-weight", grand.max_weight, "weight range (weighted)");
  grnd->add_option("--k", grand.k, "cardinality bound (weighted)");
  grnd->add_option("--w", grand.w, "weight bound (weighted)");
  grnd->add_option("--paths", grand.paths, "path count (chain)");
  grnd->add_option("--max-path-length", grand.max_path_length,
                   "path length bound (chain)");
  grnd->callback([&] { rc = run_gen_random(grand); });

  // analyze
  auto* analyze = app.add_subcommand("analyze", "structural probes over cut families");
  analyze->require_subcommand(1);
  std::string amz_file, amz_family;
  bool amz_json = false;
  auto* amz = analyze->add_subcommand("maze", "orientations of a disjoint cut family");
  amz->add_option("file", amz_file, "instance file")->required();
  amz->add_option("--family", amz_family, "family file (default: computed)");
  amz->add_flag("--json", amz_json, "machine-readable report");
  amz->callback([&] { rc = run_analyze_maze(amz_file, amz_family, amz_json); });

  std::string abt_file, abt_family;
  int abt_a = 2;
  bool abt_json = false;
  auto* abt = analyze->add_subcommand("bowtie", "search for an ordered bowtie");
  abt->add_option("file", abt_file, "instance file")->required();
  abt->add_option("--family", abt_family, "family file (default: computed)");
  abt->add_option("--a", abt_a, "bowtie length (default 2)");
  abt->add_flag("--json", abt_json, "machine-readable report");
  abt->callback([&] { rc = run_analyze_bowtie(abt_file, abt_family, abt_a, abt_json); });

  std::string afl_file, afl_family;
  int afl_b = 2;
  bool afl_json = false;
  auto* afl = analyze->add_subcommand("flower", "search for a same-orientation flower");
  afl->add_option("file", afl_file, "instance file")->required();
  afl->add_option("--family", afl_family, "family file (default: computed)");
  afl->add_option("--b", afl_b, "minimum flower size (default 2)");
  afl->add_flag("--json", afl_json, "machine-readable report");
  afl->callback([&] { rc = run_analyze_flower(afl_file, afl_family, afl_b, afl_json); });

  std::string abd_file, abd_family;
  bool abd_json = false;
  auto* abd = analyze->add_subcommand("bounds", "bowtie and flower bounds on a closest family");
  abd->add_option("file", abd_file, "instance file")->required();
  abd->add_option("--family", abd_family, "family file (default: computed)");
  abd->add_flag("--json", abd_json, "machine-readable report");
  abd->callback([&] { rc = run_analyze_bounds(abd_file, abd_family, abd_json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // help or version
    app.exit(e);
    return 2;
  } catch (const mbcut::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
