#include "cyclespan/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cyclespan/edgespace.hpp"
#include "cyclespan/errors.hpp"
#include "cyclespan/random.hpp"

namespace cyclespan {

namespace {

// Stage labels for derive_seed.
enum : std::uint64_t {
  kStageSeedCycle = 1,
  kStageCoset = 2,
  kStageShortcut = 3,
  kStageStartEdges = 4,
  kStageSwitcher = 5,
  kStageHamiltonPath = 6,
  kStageVerify = 7,
};

HamiltonOptions hamilton_options(const PipelineConfig& cfg, Variant variant) {
  HamiltonOptions h = cfg.hamilton;
  if (h.strategy == HamiltonStrategy::automatic && variant == Variant::sparse) h.strategy = HamiltonStrategy::posa;
  return h;
}

std::size_t r_count(const Graph& g, const EdgeVector& r, const std::vector<Vertex>& path) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) count += r.test(*g.edge_id(path[i], path[i + 1]));
  return count;
}

}  // namespace

const char* to_string(Variant variant) {
  switch (variant) {
    case Variant::automatic: return "auto";
    case Variant::dense: return "dense";
    case Variant::sparse: return "sparse";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  if (name == "auto") return Variant::automatic;
  if (name == "dense") return Variant::dense;
  if (name == "sparse") return Variant::sparse;
  throw InvalidInput("unknown variant '" + name + "'");
}

const char* to_string(Route route) {
  switch (route) {
    case Route::seed: return "seed";
    case Route::shortcut: return "shortcut";
    case Route::switcher: return "switcher";
  }
  return "unknown";
}

ResolvedParameters resolve_parameters(const Graph& g, const PipelineConfig& cfg) {
  const auto n = static_cast<double>(g.vertex_count());
  ResolvedParameters p;
  p.variant = cfg.variant;
  if (p.variant == Variant::automatic) {
    p.variant = static_cast<double>(g.min_degree()) >= n / 2.0 + cfg.c_const ? Variant::dense : Variant::sparse;
  }
  const double lnn = std::log(std::max(n, 3.0));
  p.d = cfg.d.value_or(std::max(2.0, std::floor(std::log(lnn) / 2.0)));
  p.s = cfg.s.value_or(std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(n / (6.0 * p.d)))));
  if (p.variant == Variant::dense) {
    p.ell = cfg.ell.value_or(10);
  } else {
    p.ell = cfg.ell.value_or(std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(lnn))));
  }
  p.connector = cfg.connector;
  if (p.connector == Connector::automatic) {
    p.connector = p.variant == Variant::dense ? Connector::dense_distance2 : Connector::bfs_greedy;
  }
  return p;
}

RefutationReport odd_intersection_hamilton(const Graph& g, const EdgeVector& r, const PipelineConfig& cfg,
                                           std::uint64_t stream) {
  if (r.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  const ResolvedParameters params = resolve_parameters(g, cfg);
  const HamiltonOptions hopts = hamilton_options(cfg, params.variant);
  RefutationReport report;

  for (std::size_t a = 0; a < cfg.shortcut_attempts; ++a) {
    CycleSearch cs = find_hamilton_cycle(g, derive_seed(cfg.seed, {kStageShortcut, stream, a}), hopts);
    report.hamilton_work += cs.work;
    if (!cs.cycle) {
      report.failed_stage = "shortcut";
      report.detail = to_string(cs.status);
      if (cs.status == SearchStatus::proven_none) return report;
      continue;
    }
    if (dot(cs.cycle->edges(), r)) {
      report.cycle = std::move(cs.cycle);
      report.route = Route::shortcut;
      return report;
    }
  }

  std::vector<Edge> starts;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!r.test(e)) starts.push_back(g.edge(e));
  }
  if (starts.empty()) {
    report.failed_stage = "odd-cycle";
    report.detail = to_string(CycleLemmaStatus::r_equals_g);
    return report;
  }
  Rng rng(derive_seed(cfg.seed, {kStageStartEdges, stream}));
  rng.shuffle(starts);

  SwitcherConfig sc;
  sc.ell = params.ell;
  sc.d = params.d;
  sc.s = params.s;
  sc.connector = params.connector;
  report.route = Route::switcher;

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(cfg.retries, 1); ++attempt) {
    if (attempt > 0) ++report.switcher_retries;
    sc.seed = derive_seed(cfg.seed, {kStageSwitcher, stream, attempt});
    Edge start = starts[attempt % starts.size()];
    if (attempt % 2 == 1) std::swap(start.u, start.v);

    // S2.a
    const OddCycleSearch oc = find_odd_r_cycle(g, r, sc, start);
    if (!oc.cycle) {
      report.failed_stage = "odd-cycle";
      report.detail = std::string(to_string(oc.status)) + (oc.detail.empty() ? "" : ": " + oc.detail);
      continue;
    }
    report.odd_cycle_length = oc.cycle->length();

    // S2.b, falling back to unconstrained shortest paths.
    SwitcherBuild build = build_parity_switcher(g, *oc.cycle, sc);
    if (!build.switcher && sc.connector != Connector::bfs_greedy) {
      SwitcherConfig fallback = sc;
      fallback.connector = Connector::bfs_greedy;
      build = build_parity_switcher(g, *oc.cycle, fallback);
    }
    if (!build.switcher) {
      report.failed_stage = "connectors";
      report.detail = "could not connect pair P_" + std::to_string(build.failed_index);
      continue;
    }
    const ParitySwitcher& w = *build.switcher;
    report.switcher_size = w.vertices().size();

    // S3
    std::vector<std::uint8_t> drop(g.vertex_count(), 0);
    for (Vertex v : w.vertices()) drop[v] = 1;
    drop[w.start()] = 0;
    drop[w.finish()] = 0;
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!drop[v]) keep.push_back(v);
    }
    const InducedSubgraph sub = induced_subgraph(g, keep);
    const auto x = static_cast<Vertex>(sub.local[w.start()]);
    const auto y = static_cast<Vertex>(sub.local[w.finish()]);
    const bool backtrack = hopts.strategy == HamiltonStrategy::backtracking ||
                           (hopts.strategy == HamiltonStrategy::automatic &&
                            sub.graph.vertex_count() <= std::min<std::size_t>(hopts.backtracking_limit, 64));
    PathSearch ps = backtrack
                        ? find_hamilton_path_backtracking(sub.graph, x, y, hopts.node_budget)
                        : find_hamilton_path_posa(sub.graph, x, y,
                                                  derive_seed(cfg.seed, {kStageHamiltonPath, stream, attempt}),
                                                  hopts.max_rotations);
    report.hamilton_work += ps.work;
    if (!backtrack) report.posa_rotations += ps.work;
    if (!ps.path) {
      report.failed_stage = "hamilton-path";
      report.detail = to_string(ps.status);
      continue;
    }
    std::vector<Vertex> h1;
    h1.reserve(ps.path->order.size());
    for (Vertex v : ps.path->order) h1.push_back(sub.original[v]);

    // S4
    const SwitcherPaths traversals = switcher_hamilton_paths(g, w, r);
    const bool h1_odd = r_count(g, r, h1) % 2 == 1;
    const std::vector<Vertex>& h2 = h1_odd ? traversals.even.order : traversals.odd.order;

    // S5
    std::vector<Vertex> order = h1;
    order.insert(order.end(), h2.rbegin() + 1, h2.rend() - 1);
    HamiltonCycle cycle = HamiltonCycle::from_order(g, std::move(order));
    if (!dot(cycle.edges(), r)) throw std::logic_error("concatenated Hamilton cycle has even r-intersection");
    report.cycle = std::move(cycle);
    report.failed_stage.clear();
    report.detail.clear();
    return report;
  }
  return report;
}

DecompositionResult hamilton_basis(const Graph& g, const PipelineConfig& cfg) {
  DecompositionResult result;
  result.n = g.vertex_count();
  result.m = g.edge_count();
  auto fail = [&](std::string stage, std::string detail) {
    result.failure_stage = std::move(stage);
    result.failure_detail = std::move(detail);
    return result;
  };
  if (result.n < 3) return fail("input", "need at least 3 vertices");
  if (!g.connected()) return fail("input", "graph is disconnected");
  result.rank_target = result.m - result.n + 1;
  const ResolvedParameters params = resolve_parameters(g, cfg);
  result.variant = params.variant;
  if (result.n % 2 == 0) {
    if (!g.is_bipartite()) {
      return fail("parity-obstruction",
                  "n is even and the graph has an odd cycle; every sum of Hamilton cycles has even size");
    }
    return fail("undetermined", "parity obstruction not applicable; spanning undetermined");
  }

  const HamiltonOptions hopts = hamilton_options(cfg, params.variant);
  CycleSearch first = find_hamilton_cycle(g, derive_seed(cfg.seed, {kStageSeedCycle}), hopts);
  if (!first.cycle) return fail("seed-hamilton-cycle", to_string(first.status));
  if (hopts.strategy == HamiltonStrategy::posa ||
      (hopts.strategy == HamiltonStrategy::automatic && result.n > hopts.backtracking_limit)) {
    result.posa_rotations += first.work;
  }
  Gf2Basis spanned(result.m);
  spanned.insert(first.cycle->edges());
  IterationRecord seed_record;
  seed_record.hamilton_work = first.work;
  result.iterations.push_back(seed_record);
  result.basis.push_back(std::move(*first.cycle));

  while (spanned.rank() < result.rank_target) {
    const std::size_t it = result.basis.size();
    const auto r0 = next_candidate(g, spanned, false);
    if (!r0) throw std::logic_error("no candidate although the rank is below the cycle space dimension");
    MaximizeOptions mo;
    mo.coset.exhaustive_limit = cfg.coset_exhaustive_limit;
    mo.coset.restarts = cfg.coset_restarts;
    mo.coset.seed = derive_seed(cfg.seed, {kStageCoset, it});
    mo.verify.c3_exhaustive_limit = cfg.c3_exhaustive_limit;
    mo.verify.c3_samples = cfg.c3_samples;
    mo.verify.c2_enumeration_limit = 0;
    mo.verify.seed = derive_seed(cfg.seed, {kStageVerify, it});
    mo.provenance = "pipeline-iteration " + std::to_string(it);
    const Certificate cert = maximize(g, *r0, mo);

    RefutationReport rep = odd_intersection_hamilton(g, cert.r, cfg, it);
    result.switcher_retries += rep.switcher_retries;
    result.posa_rotations += rep.posa_rotations;
    IterationRecord rec;
    rec.index = it;
    rec.route = rep.route;
    rec.certificate_weight = cert.r.weight();
    rec.c3_pass = cert.c3_pass();
    rec.odd_cycle_length = rep.odd_cycle_length;
    rec.switcher_size = rep.switcher_size;
    rec.switcher_retries = rep.switcher_retries;
    rec.hamilton_work = rep.hamilton_work;
    if (cfg.keep_certificates) rec.certificate = cert.r;
    result.iterations.push_back(rec);
    if (!rep.cycle) {
      result.rank_achieved = spanned.rank();
      return fail(rep.failed_stage, "iteration " + std::to_string(it) + ": " + rep.detail);
    }
    if (!dot(rep.cycle->edges(), cert.r) || !spanned.insert(rep.cycle->edges())) {
      throw std::logic_error("refuting cycle did not raise the rank");
    }
    result.basis.push_back(std::move(*rep.cycle));
  }
  result.rank_achieved = spanned.rank();
  result.success = result.rank_achieved == result.rank_target;
  return result;
}

std::optional<std::vector<std::size_t>> express_cycle(const Graph& g, const EdgeVector& target,
                                                      const DecompositionResult& result) {
  if (!result.success) throw InvalidInput("express needs a successful decomposition");
  if (target.size() != g.edge_count()) throw DimensionError("target is not over this graph");
  if (!is_in_cycle_space(g, target)) return std::nullopt;
  Gf2Basis basis(g.edge_count());
  std::vector<std::size_t> accepted;
  for (std::size_t i = 0; i < result.basis.size(); ++i) {
    if (basis.insert(result.basis[i].edges())) accepted.push_back(i);
  }
  auto ids = basis.solve_inserted(target);
  if (!ids) return std::nullopt;
  std::vector<std::size_t> out;
  for (std::size_t id : *ids) out.push_back(accepted[id]);
  std::sort(out.begin(), out.end());
  return out;
}

SpanVerdict verify_span_bruteforce(const Graph& g, std::size_t max_vertices) {
  SpanVerdict v;
  v.target_rank = g.edge_count() + g.component_count() - g.vertex_count();
  Gf2Basis basis(g.edge_count());
  visit_hamilton_cycles(
      g,
      [&](std::span<const Vertex> order) {
        ++v.cycles;
        basis.insert(g.path_edges(order, true));
        return true;
      },
      max_vertices);
  v.rank = basis.rank();
  v.spans = v.rank == v.target_rank;
  return v;
}

void format_decomposition(const DecompositionResult& result, std::ostream& out) {
  out << "# cyclespan-decomposition-v1\n"
      << "n: " << result.n << '\n'
      << "m: " << result.m << '\n'
      << "rank: " << result.rank_achieved << '\n'
      << "target_rank: " << result.rank_target << '\n'
      << "success: " << (result.success ? "true" : "false") << '\n'
      << "variant: " << to_string(result.variant) << '\n'
      << "switcher_retries: " << result.switcher_retries << '\n'
      << "posa_rotations: " << result.posa_rotations << '\n';
  if (!result.success) {
    out << "failure_stage: " << result.failure_stage << '\n' << "failure_detail: " << result.failure_detail << '\n';
  }
  out << "basis:\n";
  for (const HamiltonCycle& h : result.basis) format_vertex_sequence(h.order(), out);
  out << "iterations:\n"
      << "# index route certificate_weight c3_pass odd_cycle_length switcher_size switcher_retries "
         "hamilton_work\n";
  for (const IterationRecord& r : result.iterations) {
    out << r.index << ' ' << to_string(r.route) << ' ' << r.certificate_weight << ' ' << (r.c3_pass ? 1 : 0) << ' '
        << r.odd_cycle_length << ' ' << r.switcher_size << ' ' << r.switcher_retries << ' ' << r.hamilton_work
        << '\n';
  }
}

DecompositionResult parse_decomposition(const Graph& g, std::istream& in) {
  DecompositionResult result;
  enum class Section { header, basis, iterations } section = Section::header;
  std::string line;
  std::size_t number = 0;
  auto to_size = [&](const std::string& text) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ParseError(number, "expected a number, got '" + text + "'");
    }
  };
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    if (line == "basis:") {
      section = Section::basis;
      continue;
    }
    if (line == "iterations:") {
      section = Section::iterations;
      continue;
    }
    if (section == Section::header) {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) throw ParseError(number, "expected 'key: value'");
      const std::string key = line.substr(0, colon);
      const std::string value = line.substr(colon + 2);
      if (key == "n") result.n = to_size(value);
      else if (key == "m") result.m = to_size(value);
      else if (key == "rank") result.rank_achieved = to_size(value);
      else if (key == "target_rank") result.rank_target = to_size(value);
      else if (key == "success") result.success = value == "true";
      else if (key == "variant") result.variant = parse_variant(value);
      else if (key == "switcher_retries") result.switcher_retries = to_size(value);
      else if (key == "posa_rotations") result.posa_rotations = to_size(value);
      else if (key == "failure_stage") result.failure_stage = value;
      else if (key == "failure_detail") result.failure_detail = value;
    } else if (section == Section::basis) {
      try {
        result.basis.push_back(HamiltonCycle::from_order(g, parse_vertex_sequence(line, number)));
      } catch (const InvalidInput& e) {
        throw ParseError(number, e.what());
      }
    } else {
      std::istringstream fields(line);
      IterationRecord r;
      std::string route;
      int c3 = 0;
      if (!(fields >> r.index >> route >> r.certificate_weight >> c3 >> r.odd_cycle_length >> r.switcher_size >>
            r.switcher_retries >> r.hamilton_work)) {
        throw ParseError(number, "malformed iteration record");
      }
      r.route = route == "seed" ? Route::seed : route == "shortcut" ? Route::shortcut : Route::switcher;
      r.c3_pass = c3 != 0;
      result.iterations.push_back(r);
    }
  }
  if (result.n != g.vertex_count() || result.m != g.edge_count()) {
    throw ParseError(number, "decomposition does not belong to this graph");
  }
  return result;
}

}  // namespace cyclespan
