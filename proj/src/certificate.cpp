#include "cyclespan/certificate.hpp"

#include <ostream>

#include "bipartition_scan.hpp"
#include "cyclespan/errors.hpp"
#include "cyclespan/random.hpp"

namespace cyclespan {

namespace {

void check_half_sampled(const Graph& g, const EdgeVector& r, const VerifyOptions& options, Certificate& cert) {
  const std::size_t n = g.vertex_count();
  cert.c3_mode = CheckMode::sampled;
  cert.c3_half_pass = true;
  std::vector<std::uint8_t> side(n, 0);
  // Per edge: endpoints and the contribution to e_G - 2 e_r when crossing.
  std::vector<std::uint32_t> eu(g.edge_count()), ev(g.edge_count());
  std::vector<int> w(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    eu[e] = g.edge(e).u;
    ev[e] = g.edge(e).v;
    w[e] = r.test(e) ? -1 : 1;
  }
  auto check = [&]() {
    ++cert.c3_partitions_checked;
    long long excess = 0;
    for (EdgeId e = 0; e < eu.size(); ++e) excess += (side[eu[e]] ^ side[ev[e]]) * w[e];
    if (excess > 0) {
      cert.c3_half_pass = false;
      for (Vertex v = 0; v < n; ++v) {
        if (side[v]) cert.c3_witness.push_back(v);
      }
      return false;
    }
    return true;
  };
  // Star cuts are cheap to check directly.
  for (Vertex v = 0; v < n; ++v) {
    long long er = 0;
    for (EdgeId e : g.incident_edges(v)) er += r.test(e);
    ++cert.c3_partitions_checked;
    if (2 * er < static_cast<long long>(g.degree(v))) {
      cert.c3_half_pass = false;
      cert.c3_witness = {v};
      return;
    }
  }
  Rng rng(options.seed);
  for (std::size_t i = 0; i < options.c3_samples; ++i) {
    rng.fill_bits(side);
    if (!check()) return;
  }
}

}  // namespace

const char* to_string(C2Status status) {
  switch (status) {
    case C2Status::not_checked: return "not-checked";
    case C2Status::verified_on_sample: return "verified-on-sample";
    case C2Status::verified_exhaustively: return "verified-exhaustively";
  }
  return "unknown";
}

std::string Certificate::failure() const {
  if (!c1_pass) return "r equals the whole edge set";
  if (!c3_not_cut) return "r is a cut";
  if (!c3_half_pass) return "r holds fewer than half the edges of some cut";
  if (c2_status != C2Status::not_checked && !c2_pass) return "a Hamilton cycle meets r an odd number of times";
  return {};
}

Certificate verify_certificate(const Graph& g, const EdgeVector& r, const VerifyOptions& options,
                               std::span<const HamiltonCycle> cycle_sample) {
  if (r.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  const std::size_t n = g.vertex_count();
  Certificate cert;
  cert.r = r;
  cert.provenance = "given";
  cert.c1_pass = r.weight() < g.edge_count();
  cert.c3_not_cut = !is_cut(g, r);

  const bool exhaustive = options.c3_mode == CheckMode::exhaustive ||
                          (options.c3_mode == CheckMode::automatic && n <= options.c3_exhaustive_limit);
  if (exhaustive) {
    cert.c3_mode = CheckMode::exhaustive;
    cert.c3_half_pass = true;
    detail::scan_bipartitions(g, r, [&](std::uint32_t a, long long eg, long long er) {
      ++cert.c3_partitions_checked;
      if (2 * er < eg) {
        cert.c3_half_pass = false;
        for (Vertex v = 0; v < n; ++v) {
          if ((a >> v) & 1U) cert.c3_witness.push_back(v);
        }
        return false;
      }
      return true;
    });
  } else {
    check_half_sampled(g, r, options, cert);
  }

  if (n <= options.c2_enumeration_limit) {
    cert.c2_status = C2Status::verified_exhaustively;
    visit_hamilton_cycles(
        g,
        [&](std::span<const Vertex> order) {
          if (dot(g.path_edges(order, true), r)) {
            cert.c2_pass = false;
            cert.c2_witness.assign(order.begin(), order.end());
            return false;
          }
          return true;
        },
        options.c2_enumeration_limit);
  } else if (!cycle_sample.empty()) {
    cert.c2_status = C2Status::verified_on_sample;
    for (const HamiltonCycle& h : cycle_sample) {
      if (dot(h.edges(), r)) {
        cert.c2_pass = false;
        cert.c2_witness = h.order();
        break;
      }
    }
  }
  return cert;
}

std::optional<EdgeVector> next_candidate(const Graph& g, const Gf2Basis& spanned, bool check_precondition) {
  if (spanned.edge_count() != g.edge_count()) throw DimensionError("basis is not over this graph");
  for (const EdgeVector& b : spanned.vectors()) {
    if (check_precondition && !is_in_cycle_space(g, b)) {
      throw InvalidInput("spanned subspace is not inside the cycle space");
    }
  }
  const CutTester is_cut_vector(g);
  const auto free = spanned.free_columns();
  for (auto it = free.rbegin(); it != free.rend(); ++it) {
    const std::size_t f = *it;
    EdgeVector x = spanned.complement_vector(f);
    if (!is_cut_vector(x)) return x;
  }
  return std::nullopt;
}

Certificate maximize(const Graph& g, const EdgeVector& r0, const MaximizeOptions& options) {
  EdgeVector r = coset_max_weight(g, r0, options.coset);
  Certificate cert = verify_certificate(g, r, options.verify);
  std::size_t rounds = 0;
  while (options.improve_on_violation && !cert.c3_half_pass && !cert.c3_witness.empty()) {
    std::vector<std::uint8_t> side(g.vertex_count(), 0);
    for (Vertex v : cert.c3_witness) side[v] = 1;
    r = coset_local_ascent(g, r ^ g.cut(side));
    VerifyOptions again = options.verify;
    again.seed = derive_seed(options.verify.seed, {++rounds});
    cert = verify_certificate(g, r, again);
  }
  cert.provenance = options.provenance;
  return cert;
}

void format_certificate(const Graph& g, const Certificate& cert, std::ostream& out) {
  format_edge_list(g, cert.r, out);
  out << "---\n";
  out << "weight: " << cert.r.weight() << '\n'
      << "edges: " << g.edge_count() << '\n'
      << "c1_pass: " << (cert.c1_pass ? "true" : "false") << '\n'
      << "c2_status: " << to_string(cert.c2_status) << '\n';
  if (cert.c2_status != C2Status::not_checked) out << "c2_pass: " << (cert.c2_pass ? "true" : "false") << '\n';
  out << "c3_mode: " << to_string(cert.c3_mode) << '\n'
      << "c3_partitions_checked: " << cert.c3_partitions_checked << '\n'
      << "c3_half_pass: " << (cert.c3_half_pass ? "true" : "false") << '\n'
      << "c3_not_cut: " << (cert.c3_not_cut ? "true" : "false") << '\n'
      << "provenance: " << cert.provenance << '\n'
      << "verdict: " << (cert.valid() ? "valid" : cert.failure()) << '\n';
}

}  // namespace cyclespan
