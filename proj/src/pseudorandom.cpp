#include "cyclespan/pseudorandom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

#include "bipartition_scan.hpp"
#include "cyclespan/errors.hpp"
#include "cyclespan/random.hpp"

namespace cyclespan {

namespace {

constexpr double kSlackTolerance = 1e-9;

double choose2(double k) { return k * (k - 1.0) / 2.0; }

std::vector<Vertex> mask_members(std::uint64_t mask, std::size_t n) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if ((mask >> v) & 1U) out.push_back(v);
  }
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  return std::exp(std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                  std::lgamma(static_cast<double>(n - k) + 1));
}

std::size_t edges_inside(const Graph& g, const std::vector<Vertex>& subset, std::vector<std::uint8_t>& mark) {
  for (Vertex v : subset) mark[v] = 1;
  std::size_t twice = 0;
  for (Vertex v : subset) {
    for (Vertex w : g.neighbors(v)) twice += mark[w];
  }
  for (Vertex v : subset) mark[v] = 0;
  return twice / 2;
}

}  // namespace

const char* to_string(CheckMode mode) {
  switch (mode) {
    case CheckMode::automatic: return "automatic";
    case CheckMode::exhaustive: return "exhaustive";
    case CheckMode::sampled: return "sampled";
  }
  return "unknown";
}

double jumbled_slack(const Graph& g, const std::vector<Vertex>& subset, double p, double beta) {
  std::vector<std::uint8_t> mark(g.vertex_count(), 0);
  const double e = static_cast<double>(edges_inside(g, subset, mark));
  const double u = static_cast<double>(subset.size());
  return beta * u - std::abs(e - p * choose2(u));
}

JumbledResult is_jumbled_exhaustive(const Graph& g, double p, double beta, std::size_t max_vertices) {
  const std::size_t n = g.vertex_count();
  if (n > std::min<std::size_t>(max_vertices, 30)) {
    throw LimitExceeded("exhaustive jumbledness check refuses n = " + std::to_string(n) +
                        " (limit " + std::to_string(std::min<std::size_t>(max_vertices, 30)) +
                        "); use the sampled mode");
  }
  JumbledResult result;
  result.mode = CheckMode::exhaustive;
  result.worst_slack = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= 1U << e.v;
    adj[e.v] |= 1U << e.u;
  }
  std::uint32_t set = 0, worst = 0;
  long long e = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int v = std::countr_zero(t);
    const std::uint32_t bit = 1U << v;
    if (set & bit) {
      set ^= bit;
      e -= std::popcount(adj[v] & set);
    } else {
      e += std::popcount(adj[v] & set);
      set ^= bit;
    }
    const double u = std::popcount(set);
    const double slack = beta * u - std::abs(static_cast<double>(e) - p * choose2(u));
    if (slack < result.worst_slack) {
      result.worst_slack = slack;
      worst = set;
    }
  }
  result.subsets_checked = total == 0 ? 0 : total - 1;
  if (n == 0) result.worst_slack = 0.0;
  result.witness = mask_members(worst, n);
  result.pass = result.worst_slack >= -kSlackTolerance;
  return result;
}

JumbledResult is_jumbled_sampled(const Graph& g, double p, double beta, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidInput("sampled jumbledness check needs at least one sample");
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  JumbledResult result;
  result.mode = CheckMode::sampled;
  result.worst_slack = std::numeric_limits<double>::infinity();
  if (n == 0) {
    result.worst_slack = 0.0;
    return result;
  }
  Rng rng(seed);
  std::vector<std::uint8_t> mark(n, 0);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto size = static_cast<std::uint32_t>(rng.between(1, n));
    auto subset = rng.sample(n, size);
    const double e = static_cast<double>(edges_inside(g, subset, mark));
    const double slack = beta * size - std::abs(e - p * choose2(size));
    if (slack < result.worst_slack) {
      result.worst_slack = slack;
      std::sort(subset.begin(), subset.end());
      result.witness = std::move(subset);
    }
  }
  result.subsets_checked = samples;
  result.pass = result.worst_slack >= -kSlackTolerance;
  return result;
}

SpectralEstimate spectral_beta(const Graph& g, std::size_t max_iterations, double tolerance, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw InvalidInput("spectral estimate needs a non-empty graph");
  SpectralEstimate est;
  est.regular = g.min_degree() == g.max_degree();
  est.degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
  if (n == 1) {
    est.converged = true;
    return est;
  }

  auto project = [n](std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);
    for (double& x : v) x -= mean;
  };
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  auto apply = [&g, n](const std::vector<double>& in, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Edge& e : g.edges()) {
      out[e.u] += in[e.v];
      out[e.v] += in[e.u];
    }
    (void)n;
  };

  Rng rng(seed);
  std::vector<double> x(n), y(n), z(n);
  for (double& v : x) v = rng.uniform() - 0.5;
  project(x);
  double nx = norm(x);
  for (double& v : x) v /= nx;

  double mu = 0.0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    apply(x, y);
    project(y);
    apply(y, z);
    project(z);
    mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i] * z[i];
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += (z[i] - mu * x[i]) * (z[i] - mu * x[i]);
    residual = std::sqrt(residual);
    est.iterations = it;
    const double nz = norm(z);
    if (residual <= tolerance * std::max(mu, 1.0) || nz == 0.0) {
      est.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz;
    project(x);
    nx = norm(x);
    for (double& v : x) v /= nx;
  }
  est.lambda = std::sqrt(std::max(mu, 0.0));
  return est;
}

ExpansionResult expansion_check(const Graph& g, std::size_t s, double d, CheckMode mode, std::size_t samples,
                                std::uint64_t seed, double budget) {
  if (s == 0) throw InvalidInput("expansion check needs s >= 1");
  const std::size_t n = g.vertex_count();
  s = std::min(s, n);
  ExpansionResult result;
  double sets = 0.0;
  for (std::size_t k = 1; k <= s; ++k) sets += binomial(n, k);
  const bool exhaustive = mode == CheckMode::exhaustive || (mode == CheckMode::automatic && sets <= budget);
  result.mode = exhaustive ? CheckMode::exhaustive : CheckMode::sampled;

  if (exhaustive) {
    std::vector<std::size_t> cnt(n, 0);
    std::vector<std::uint8_t> in(n, 0);
    std::vector<Vertex> members;
    std::size_t outside = 0;  // |N(S)|
    auto add = [&](Vertex a) {
      if (cnt[a] > 0) --outside;
      in[a] = 1;
      members.push_back(a);
      for (Vertex w : g.neighbors(a)) {
        if (cnt[w]++ == 0 && !in[w]) ++outside;
      }
    };
    auto remove = [&](Vertex a) {
      for (Vertex w : g.neighbors(a)) {
        if (--cnt[w] == 0 && !in[w]) --outside;
      }
      in[a] = 0;
      members.pop_back();
      if (cnt[a] > 0) ++outside;
    };
    std::function<bool(Vertex)> extend = [&](Vertex start) -> bool {
      for (Vertex v = start; v < n; ++v) {
        add(v);
        ++result.sets_checked;
        if (static_cast<double>(outside) < d * static_cast<double>(members.size())) {
          result.pass = false;
          result.witness = members;
          return false;
        }
        if (members.size() < s && !extend(v + 1)) return false;
        remove(v);
      }
      return true;
    };
    extend(0);
    return result;
  }

  Rng rng(seed);
  std::vector<std::uint8_t> mark(n, 0);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto size = static_cast<std::uint32_t>(rng.between(1, s));
    auto subset = rng.sample(static_cast<std::uint32_t>(n), size);
    for (Vertex v : subset) mark[v] = 1;
    std::size_t outside = 0;
    for (Vertex v : subset) {
      for (Vertex w : g.neighbors(v)) {
        if (mark[w] == 0) {
          mark[w] = 2;
          ++outside;
        }
      }
    }
    for (Vertex v : subset) {
      for (Vertex w : g.neighbors(v)) mark[w] = 0;
      mark[v] = 0;
    }
    ++result.sets_checked;
    if (static_cast<double>(outside) < d * static_cast<double>(size)) {
      result.pass = false;
      std::sort(subset.begin(), subset.end());
      result.witness = std::move(subset);
      return result;
    }
  }
  return result;
}

CutDensityResult cut_density_check(const Graph& g, double p, double eps, CheckMode mode, std::size_t samples,
                                   std::uint64_t seed, std::size_t exhaustive_limit) {
  const std::size_t n = g.vertex_count();
  const double factor = (1.0 - 6.0 * eps) * p;
  CutDensityResult result;
  const bool exhaustive = mode == CheckMode::exhaustive || (mode == CheckMode::automatic && n <= exhaustive_limit);
  result.mode = exhaustive ? CheckMode::exhaustive : CheckMode::sampled;
  double worst_deficit = 0.0;
  std::vector<std::uint8_t> worst_side;

  auto consider = [&](const std::vector<std::uint8_t>& side, double a, double eg) {
    ++result.partitions_checked;
    const double deficit = factor * a * (static_cast<double>(n) - a) - eg;
    if (deficit > kSlackTolerance && deficit > worst_deficit) {
      worst_deficit = deficit;
      worst_side = side;
    }
  };

  if (exhaustive) {
    if (n < 2) return result;
    const EdgeVector none(g.edge_count());
    detail::scan_bipartitions(g, none, [&](std::uint32_t a, long long eg, long long) {
      const int size = std::popcount(a);
      if (size == 0) return true;
      const double deficit = factor * size * static_cast<double>(n - size) - static_cast<double>(eg);
      ++result.partitions_checked;
      if (deficit > kSlackTolerance && deficit > worst_deficit) {
        worst_deficit = deficit;
        worst_side = detail::mask_to_sides(a, n);
      }
      return true;
    });
  } else {
    std::vector<std::uint8_t> side(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      side[v] = 1;
      consider(side, 1.0, static_cast<double>(g.degree(v)));
      side[v] = 0;
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      rng.fill_bits(side);
      const auto a = static_cast<std::size_t>(std::count(side.begin(), side.end(), 1));
      if (a == 0 || a == n) continue;
      std::size_t eg = 0;
      for (const Edge& e : g.edges()) eg += side[e.u] != side[e.v];
      consider(side, static_cast<double>(a), static_cast<double>(eg));
    }
  }
  if (!worst_side.empty()) {
    result.pass = false;
    // Report the smaller side.
    const auto a = static_cast<std::size_t>(std::count(worst_side.begin(), worst_side.end(), 1));
    const std::uint8_t want = 2 * a <= n ? 1 : 0;
    for (Vertex v = 0; v < n; ++v) {
      if (worst_side[v] == want) result.witness.push_back(v);
    }
  }
  return result;
}

std::size_t pair_edge_threshold(double p, double beta) {
  if (!(p > 0.0)) throw InvalidInput("pair-edge threshold needs p > 0");
  return static_cast<std::size_t>(std::floor(4.0 * beta / p)) + 1;
}

PairEdgeResult pair_edge_check(const Graph& g, std::size_t k, CheckMode mode, std::size_t samples,
                               std::uint64_t seed, double budget) {
  if (k == 0) throw InvalidInput("pair-edge check needs k >= 1");
  const std::size_t n = g.vertex_count();
  PairEdgeResult result;
  if (2 * k > n) {
    result.vacuous = true;
    return result;
  }
  const bool exhaustive =
      mode == CheckMode::exhaustive || (mode == CheckMode::automatic && binomial(n, k) <= budget);
  result.mode = exhaustive ? CheckMode::exhaustive : CheckMode::sampled;

  auto record_failure = [&](const std::vector<Vertex>& a, const std::vector<std::uint8_t>& blocked) {
    result.pass = false;
    result.witness_a = a;
    std::sort(result.witness_a.begin(), result.witness_a.end());
    for (Vertex v = 0; v < n && result.witness_b.size() < k; ++v) {
      if (!blocked[v]) result.witness_b.push_back(v);
    }
  };

  if (exhaustive) {
    std::vector<std::size_t> cnt(n, 0);
    std::vector<std::uint8_t> in(n, 0);
    std::vector<Vertex> members;
    std::size_t free = n;  // vertices outside A with no neighbor in A
    auto add = [&](Vertex a) {
      if (cnt[a] == 0) --free;
      in[a] = 1;
      members.push_back(a);
      for (Vertex w : g.neighbors(a)) {
        if (cnt[w]++ == 0 && !in[w]) --free;
      }
    };
    auto remove = [&](Vertex a) {
      for (Vertex w : g.neighbors(a)) {
        if (--cnt[w] == 0 && !in[w]) ++free;
      }
      in[a] = 0;
      members.pop_back();
      if (cnt[a] == 0) ++free;
    };
    std::function<bool(Vertex)> extend = [&](Vertex start) -> bool {
      for (Vertex v = start; v + (k - members.size()) <= n; ++v) {
        add(v);
        if (members.size() == k) {
          ++result.sets_checked;
          if (free >= k) {
            std::vector<std::uint8_t> blocked(n, 0);
            for (Vertex x = 0; x < n; ++x) blocked[x] = in[x] || cnt[x] > 0;
            record_failure(members, blocked);
            return false;
          }
        } else if (!extend(v + 1)) {
          return false;
        }
        remove(v);
      }
      return true;
    };
    extend(0);
    return result;
  }

  Rng rng(seed);
  std::vector<std::uint8_t> blocked(n, 0);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = rng.sample(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k));
    std::fill(blocked.begin(), blocked.end(), 0);
    for (Vertex v : a) {
      blocked[v] = 1;
      for (Vertex w : g.neighbors(v)) blocked[w] = 1;
    }
    ++result.sets_checked;
    if (static_cast<std::size_t>(std::count(blocked.begin(), blocked.end(), 0)) >= k) {
      record_failure(a, blocked);
      return result;
    }
  }
  return result;
}

DiameterResult diameter_robustness_check(const Graph& g, const EdgeVector& r, std::size_t s_max,
                                         std::size_t path_len, std::size_t trials, std::uint64_t seed) {
  if (r.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  DiameterResult result;
  if (n < 2) return result;
  Rng rng(seed);
  std::vector<std::uint8_t> removed(n, 0);
  std::vector<std::size_t> dist(n);
  std::vector<Vertex> queue;
  constexpr auto unreached = std::numeric_limits<std::size_t>::max();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto size = static_cast<std::uint32_t>(rng.between(0, std::min<std::size_t>(s_max, n - 2)));
    const auto picks = rng.sample(n, size + 2);
    std::vector<Vertex> s(picks.begin(), picks.begin() + size);
    const Vertex x = picks[size];
    const Vertex y = picks[size + 1];
    for (Vertex v : s) removed[v] = 1;
    std::fill(dist.begin(), dist.end(), unreached);
    dist[x] = 0;
    queue.assign(1, x);
    for (std::size_t head = 0; head < queue.size() && dist[y] == unreached; ++head) {
      const Vertex v = queue[head];
      if (dist[v] == path_len) continue;
      const auto nbrs = g.neighbors(v);
      const auto ids = g.incident_edges(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const Vertex w = nbrs[i];
        if (!r.test(ids[i]) || removed[w] || dist[w] != unreached) continue;
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
    for (Vertex v : s) removed[v] = 0;
    ++result.trials;
    if (dist[y] == unreached) {
      result.pass = false;
      std::sort(s.begin(), s.end());
      result.witness_removed = std::move(s);
      result.witness_from = x;
      result.witness_to = y;
      // Distance beyond the cap (or none): finish the BFS for the report.
      std::vector<std::uint8_t> rem(n, 0);
      for (Vertex v : result.witness_removed) rem[v] = 1;
      std::fill(dist.begin(), dist.end(), unreached);
      dist[x] = 0;
      queue.assign(1, x);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Vertex v = queue[head];
        const auto nbrs = g.neighbors(v);
        const auto ids = g.incident_edges(v);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
          if (!r.test(ids[i]) || rem[nbrs[i]] || dist[nbrs[i]] != unreached) continue;
          dist[nbrs[i]] = dist[v] + 1;
          queue.push_back(nbrs[i]);
        }
      }
      if (dist[y] != unreached) result.witness_distance = dist[y];
      return result;
    }
  }
  return result;
}

bool PseudorandomReport::all_pass() const {
  const bool pair_ok = pair.pass || pair.vacuous;
  return min_degree_pass && jumbled.pass && expansion.pass && cut_density.pass && pair_ok;
}

std::string PseudorandomReport::to_text() const {
  std::ostringstream out;
  out.precision(10);
  out << "n: " << n << '\n'
      << "m: " << m << '\n'
      << "p: " << p << '\n'
      << "beta: " << beta << '\n'
      << "beta_source: " << beta_source << '\n'
      << "log_base: natural\n"
      << "min_degree: " << min_degree << '\n'
      << "min_degree_bound: " << min_degree_bound << '\n'
      << "min_degree_pass: " << (min_degree_pass ? "true" : "false") << '\n'
      << "jumbled_mode: " << (beta_source == "spectral" ? "spectral" : to_string(jumbled.mode)) << '\n'
      << "jumbled_pass: " << (jumbled.pass ? "true" : "false") << '\n'
      << "jumbled_subsets: " << jumbled.subsets_checked << '\n'
      << "jumbled_worst_slack: " << jumbled.worst_slack << '\n'
      << "expansion_s: " << expansion_s << '\n'
      << "expansion_d: " << expansion_d << '\n'
      << "expansion_mode: " << to_string(expansion.mode) << '\n'
      << "expansion_pass: " << (expansion.pass ? "true" : "false") << '\n'
      << "cut_density_mode: " << to_string(cut_density.mode) << '\n'
      << "cut_density_pass: " << (cut_density.pass ? "true" : "false") << '\n'
      << "pair_k: " << pair_k << '\n'
      << "pair_pass: " << (pair.vacuous ? "vacuous" : (pair.pass ? "true" : "false")) << '\n';
  if (spectral) {
    out << "lambda_estimate: " << spectral->lambda << '\n'
        << "lambda_converged: " << (spectral->converged ? "true" : "false") << '\n'
        << "spectral_certificate: " << (spectral->regular ? "valid" : "heuristic") << '\n';
  }
  out << "verdict: " << (all_pass() ? "pass" : "fail") << '\n';
  return out.str();
}

PseudorandomReport certify_pseudorandom(const Graph& g, const CertifyOptions& options) {
  PseudorandomReport report;
  const std::size_t n = g.vertex_count();
  if (n < 2) throw InvalidInput("pseudorandomness report needs at least two vertices");
  report.n = n;
  report.m = g.edge_count();
  const double nn = static_cast<double>(n);

  if (options.spectral_beta) {
    report.spectral = spectral_beta(g);
    report.p = report.spectral->degree / nn;
    report.beta = report.spectral->lambda;
    report.beta_source = "spectral";
  } else {
    report.p = options.p.value_or(static_cast<double>(g.edge_count()) / choose2(nn));
    if (options.beta) {
      report.beta = *options.beta;
      report.beta_source = "given";
    } else {
      report.beta = 2.0 * std::sqrt(nn * report.p);
      report.beta_source = "2sqrt(np)";
    }
  }

  report.min_degree = g.min_degree();
  report.min_degree_bound = (1.0 - options.eps) * nn * report.p;
  report.min_degree_pass = static_cast<double>(report.min_degree) + kSlackTolerance >= report.min_degree_bound;

  if (options.spectral_beta) {
    report.jumbled.mode = CheckMode::automatic;
    report.jumbled.pass = report.spectral->regular && report.spectral->converged;
  } else {
    const bool exhaustive = options.mode == CheckMode::exhaustive || (options.mode == CheckMode::automatic && n <= 20);
    report.jumbled = exhaustive ? is_jumbled_exhaustive(g, report.p, report.beta)
                                : is_jumbled_sampled(g, report.p, report.beta, options.samples, options.seed);
  }

  report.expansion_d = options.expansion_d.value_or(std::max(2.0, std::floor(std::log(std::log(nn)) / 2.0)));
  report.expansion_s = options.expansion_s.value_or(
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(nn / (6.0 * report.expansion_d)))));
  report.expansion =
      expansion_check(g, report.expansion_s, report.expansion_d, options.mode, options.samples, options.seed);
  report.cut_density = cut_density_check(g, report.p, options.eps, options.mode, options.samples, options.seed);

  if (report.p > 0.0) {
    report.pair_k = pair_edge_threshold(report.p, report.beta);
    report.pair = pair_edge_check(g, report.pair_k, options.mode, options.samples, options.seed);
  } else {
    report.pair.pass = false;
  }
  return report;
}

}  // namespace cyclespan
