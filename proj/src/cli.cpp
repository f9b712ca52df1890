#include "cyclespan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "cyclespan/certificate.hpp"
#include "cyclespan/config.hpp"
#include "cyclespan/errors.hpp"
#include "cyclespan/experiment.hpp"
#include "cyclespan/graph.hpp"
#include "cyclespan/pipeline.hpp"
#include "cyclespan/pseudorandom.hpp"

namespace cyclespan {

namespace {

class ConfigError : public Error {
 public:
  using Error::Error;
};

const std::set<std::string> kStageSections = {"pipeline", "switcher", "certificate", "hamilton"};

// Output goes to a file when a path is given, else to the fallback stream.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path);
  fn(file);
  if (!file) throw IoError("write failed for " + path);
}

struct PipelineFlags {
  PipelineConfig cfg;
  std::string variant = "auto";
  std::string connector = "auto";
  std::string strategy = "auto";

  PipelineConfig resolve() const {
    PipelineConfig out = cfg;
    out.variant = parse_variant(variant);
    out.connector = parse_connector(connector);
    out.hamilton.strategy = parse_hamilton_strategy(strategy);
    if (out.retries == 0) throw InvalidInput("retries must be at least 1");
    return out;
  }
};

void add_pipeline_options(CLI::App* app, PipelineFlags& f) {
  PipelineConfig& c = f.cfg;
  app->add_option("--seed", c.seed, "Root seed")->group("pipeline");
  app->add_option("--eps", c.eps, "Density slack")->group("pipeline");
  app->add_option("--c-const", c.c_const, "Dense variant needs min degree >= n/2 + this")->group("pipeline");
  app->add_option("--variant", f.variant, "auto, dense or sparse")->group("pipeline");
  app->add_option("--retries", c.retries, "Switcher attempts per refutation")->group("pipeline");
  app->add_option("--shortcut-attempts", c.shortcut_attempts, "Direct Hamilton cycles tried first")->group("pipeline");
  app->add_option("--ell", c.ell, "Odd cycle length bound")->group("switcher");
  app->add_option("--d", c.d, "Expansion factor")->group("switcher");
  app->add_option("--s", c.s, "Expansion set size")->group("switcher");
  app->add_option("--connector", f.connector, "auto, dense-distance2, bfs-greedy or sparse-tree-embed")
      ->group("switcher");
  app->add_option("--c3-samples", c.c3_samples, "Random bipartitions in the sampled cut check")->group("certificate");
  app->add_option("--c3-exhaustive-limit", c.c3_exhaustive_limit, "Exhaustive cut check up to this n")
      ->group("certificate");
  app->add_option("--coset-exhaustive-limit", c.coset_exhaustive_limit, "Exhaustive coset search up to this n")
      ->group("certificate");
  app->add_option("--coset-restarts", c.coset_restarts, "Local search restarts")->group("certificate");
  app->add_option("--hamilton-strategy", f.strategy, "auto, backtracking or posa")->group("hamilton");
  app->add_option("--backtracking-limit", c.hamilton.backtracking_limit, "auto backtracks up to this n")
      ->group("hamilton");
  app->add_option("--node-budget", c.hamilton.node_budget, "Backtracking node budget")->group("hamilton");
  app->add_option("--max-rotations", c.hamilton.max_rotations, "Posa rotation budget")->group("hamilton");
  app->add_option("--posa-edge-attempts", c.hamilton.posa_edge_attempts, "Closing edges tried by Posa")
      ->group("hamilton");
}

// --- gen

struct GenFlags {
  std::string generator = "gnp";
  std::size_t n = 0;
  std::optional<double> p;
  std::string p_rule;
  std::uint64_t seed = 1;
  std::size_t dirac_offset = 2;
  std::size_t min_degree = 2;
  std::vector<std::size_t> connections;
  std::string out;
};

int run_gen(const GenFlags& f, std::ostream& out) {
  if (f.p && !f.p_rule.empty()) throw InvalidInput("give --p or --p-rule, not both");
  double p = 0.0;
  std::string p_text;
  if (f.p) {
    p = *f.p;
    p_text = DensityRule{DensityRule::Kind::constant, p}.text();
  } else if (!f.p_rule.empty()) {
    const DensityRule rule = parse_density_rule(f.p_rule);
    p = rule.p(f.n);
    p_text = rule.text();
  }
  const bool needs_p = f.generator == "gnp" || f.generator == "near-dirac";
  if (needs_p && !f.p && f.p_rule.empty()) throw InvalidInput(f.generator + " needs --p or --p-rule");

  if (f.n == 0 && f.generator != "petersen") throw InvalidInput(f.generator + " needs --n");
  Graph g;
  if (f.generator == "circulant") {
    g = circulant(f.n, f.connections);
  } else if (f.generator == "complete") {
    g = complete_graph(f.n);
  } else if (f.generator == "cycle") {
    g = cycle_graph(f.n);
  } else if (f.generator == "petersen") {
    g = petersen_graph();
  } else {
    GeneratorSpec spec;
    spec.generator = parse_generator(f.generator);
    spec.n = f.n;
    spec.p = p;
    spec.seed = f.seed;
    spec.dirac_offset = f.dirac_offset;
    spec.min_degree = f.min_degree;
    g = generate(spec);
  }
  emit(f.out, out, [&](std::ostream& o) {
    o << "# generator=" << f.generator << " n=" << g.vertex_count();
    if (!p_text.empty()) o << " p=" << p_text;
    if (needs_p || f.generator == "hitting-time") o << " seed=" << f.seed;
    o << '\n';
    format_graph(g, o);
  });
  return kExitOk;
}

// --- check

struct CheckFlags {
  std::string graph;
  std::optional<double> p;
  std::string beta = "2sqrt(np)";
  double eps = 0.01;
  std::string mode = "auto";
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> expansion_s;
  std::optional<double> expansion_d;
};

CheckMode parse_mode(const std::string& s) {
  if (s == "auto") return CheckMode::automatic;
  if (s == "exhaustive") return CheckMode::exhaustive;
  if (s == "sampled") return CheckMode::sampled;
  throw InvalidInput("unknown mode '" + s + "'");
}

int run_check(const CheckFlags& f, std::ostream& out) {
  const Graph g = read_graph(f.graph);
  CertifyOptions opt;
  opt.p = f.p;
  if (f.beta == "spectral") {
    opt.spectral_beta = true;
  } else if (f.beta != "2sqrt(np)") {
    try {
      std::size_t pos = 0;
      opt.beta = std::stod(f.beta, &pos);
      if (pos != f.beta.size()) throw std::invalid_argument(f.beta);
    } catch (const std::exception&) {
      throw InvalidInput("--beta takes a number, 'spectral' or '2sqrt(np)', got '" + f.beta + "'");
    }
  }
  opt.eps = f.eps;
  opt.mode = parse_mode(f.mode);
  opt.samples = f.samples;
  opt.seed = f.seed;
  opt.expansion_s = f.expansion_s;
  opt.expansion_d = f.expansion_d;
  const PseudorandomReport report = certify_pseudorandom(g, opt);
  out << report.to_text();
  return report.all_pass() ? kExitOk : kExitFalse;
}

// --- span-verify

int run_span_verify(const std::string& graph, std::size_t max_vertices, std::ostream& out) {
  const Graph g = read_graph(graph);
  const SpanVerdict v = verify_span_bruteforce(g, max_vertices);
  out << "spans=" << (v.spans ? "true" : "false") << " rank=" << v.rank << " target_rank=" << v.target_rank
      << " cycles=" << v.cycles << '\n';
  return v.spans ? kExitOk : kExitFalse;
}

// --- decompose

int run_decompose(const std::string& graph, const PipelineFlags& f, const std::string& path, std::ostream& out) {
  const Graph g = read_graph(graph);
  const DecompositionResult result = hamilton_basis(g, f.resolve());
  if (path.empty()) {
    format_decomposition(result, out);
  } else {
    emit(path, out, [&](std::ostream& o) { format_decomposition(result, o); });
    out << "success: " << (result.success ? "true" : "false") << '\n'
        << "rank: " << result.rank_achieved << '\n'
        << "target_rank: " << result.rank_target << '\n';
    if (!result.success) out << "failure_stage: " << result.failure_stage << '\n';
  }
  return result.success ? kExitOk : kExitFalse;
}

// --- express

int run_express(const std::string& graph, const std::string& basis_path, const std::string& target_path,
                std::ostream& out) {
  const Graph g = read_graph(graph);
  std::ifstream in(basis_path);
  if (!in) throw IoError("cannot open " + basis_path);
  const DecompositionResult result = parse_decomposition(g, in);
  const EdgeVector target = read_edge_list(g, target_path);
  const auto combination = express_cycle(g, target, result);
  if (!combination) {
    out << "not in cycle space\n";
    return kExitFalse;
  }
  EdgeVector sum(g.edge_count());
  for (std::size_t i : *combination) sum ^= result.basis[i].edges();
  if (sum != target) throw std::logic_error("combination does not sum to the target");
  out << "combination:";
  for (std::size_t i : *combination) out << ' ' << i;
  out << '\n';
  for (std::size_t i : *combination) format_vertex_sequence(result.basis[i].order(), out);
  return kExitOk;
}

// --- odd-ham

int run_odd_ham(const std::string& graph, const std::string& r_path, const PipelineFlags& f, std::ostream& out) {
  const Graph g = read_graph(graph);
  const EdgeVector r = read_edge_list(g, r_path);
  const PipelineConfig cfg = f.resolve();
  VerifyOptions vo;
  vo.c3_samples = cfg.c3_samples;
  vo.c3_exhaustive_limit = cfg.c3_exhaustive_limit;
  vo.c2_enumeration_limit = 0;
  vo.seed = cfg.seed;
  const Certificate pre = verify_certificate(g, r, vo);
  out << "precondition: " << (pre.c1_pass && pre.c3_pass() ? "ok" : pre.failure()) << '\n';
  const RefutationReport report = odd_intersection_hamilton(g, r, cfg);
  if (!report.cycle) {
    out << "failed_stage: " << report.failed_stage << '\n' << "detail: " << report.detail << '\n';
    return kExitFalse;
  }
  out << "route: " << to_string(report.route) << '\n';
  if (report.route == Route::switcher) {
    out << "odd_cycle_length: " << report.odd_cycle_length << '\n'
        << "switcher_size: " << report.switcher_size << '\n';
  }
  out << "dot: " << (dot(report.cycle->edges(), r) ? 1 : 0) << '\n'
      << "cycle: ";
  format_vertex_sequence(report.cycle->order(), out);
  return kExitOk;
}

// --- experiment

struct ExperimentFlags {
  std::string spec;
  std::vector<std::size_t> n;
  std::vector<std::string> p_rule;
  std::vector<double> c;
  std::size_t seeds = 1;
  std::uint64_t first_seed = 1;
  std::string generator = "gnp";
  std::size_t dirac_offset = 2;
  std::size_t min_degree = 2;
  bool negative_control = false;
  std::size_t workers = 0;
  bool timing = false;
  std::string out;
  std::string emit_svg;
  PipelineFlags pipeline;
};

int run_experiment_command(const ExperimentFlags& f, std::ostream& out) {
  ExperimentSpec spec;
  spec.n_values = f.n;
  spec.rules = expand_density_rules(f.p_rule, f.c);
  if (f.first_seed == 0) throw InvalidInput("seeds must be at least 1");
  for (std::size_t i = 0; i < f.seeds; ++i) spec.seeds.push_back(f.first_seed + i);
  spec.generator = parse_generator(f.generator);
  spec.dirac_offset = f.dirac_offset;
  spec.min_degree = f.min_degree;
  spec.negative_control = f.negative_control;
  spec.pipeline = f.pipeline.resolve();
  spec.workers = f.workers;
  spec.timing = f.timing;
  validate_experiment(spec);
  const std::vector<ExperimentRow> rows = run_experiment(spec);
  emit(f.out, out, [&](std::ostream& o) { write_csv(rows, o); });
  if (!f.emit_svg.empty()) emit(f.emit_svg, out, [&](std::ostream& o) { write_svg(rows, o); });
  return kExitOk;
}

// --- config plumbing

std::string option_key(const CLI::Option* opt) {
  const auto& names = opt->get_lnames();
  return names.empty() ? std::string() : names.front();
}

const CLI::Option* find_option(const CLI::App* app, const std::string& key) {
  for (const CLI::Option* opt : app->get_options()) {
    if (option_key(opt) == key) return opt;
  }
  return nullptr;
}

bool known_anywhere(const CLI::App& root, const std::string& key, const std::string& group) {
  for (const CLI::App* sub : root.get_subcommands({})) {
    const CLI::Option* opt = find_option(sub, key);
    if (opt && (group.empty() || opt->get_group() == group)) return true;
  }
  return false;
}

// Entries from config files that the running subcommand understands, in
// increasing precedence, as "--key=value" tokens. Keys given on the command
// line are left out so flags win.
std::vector<std::string> config_tokens(const CLI::App& root, const CLI::App* sub,
                                       const std::vector<ConfigFile>& files, const std::set<std::string>& given) {
  std::map<std::string, std::pair<int, std::string>> chosen;  // key -> (precedence, value)
  int file_rank = 0;
  for (const ConfigFile& file : files) {
    for (const ConfigEntry& e : file.entries) {
      const std::string where = file.source + ":" + std::to_string(e.line);
      int precedence = 0;
      bool applies = false;
      if (e.section.empty()) {
        if (!known_anywhere(root, e.key, "")) throw ConfigError(where + ": unknown key '" + e.key + "'");
        applies = find_option(sub, e.key) != nullptr;
      } else if (kStageSections.count(e.section)) {
        if (!known_anywhere(root, e.key, e.section)) {
          throw ConfigError(where + ": unknown key '" + e.key + "' in [" + e.section + "]");
        }
        const CLI::Option* opt = find_option(sub, e.key);
        applies = opt && opt->get_group() == e.section;
        precedence = 1;
      } else if (const CLI::App* target = root.get_subcommand_no_throw(e.section)) {
        if (!find_option(target, e.key)) {
          throw ConfigError(where + ": unknown key '" + e.key + "' in [" + e.section + "]");
        }
        applies = target == sub;
        precedence = 2;
      } else {
        throw ConfigError(where + ": unknown section [" + e.section + "]");
      }
      if (!applies || given.count(e.key)) continue;
      const int rank = file_rank * 3 + precedence;
      auto it = chosen.find(e.key);
      if (it == chosen.end() || it->second.first <= rank) chosen[e.key] = {rank, e.value};
    }
    ++file_rank;
  }
  std::vector<std::string> tokens;
  for (const auto& [key, value] : chosen) tokens.push_back("--" + key + "=" + value.second);
  return tokens;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto fail = [&](const char* kind, const std::string& message, int code) {
    err << "error: " << kind << ": " << one_line(message) << '\n';
    return code;
  };

  CLI::App app("Hamilton-cycle bases of graph cycle spaces over GF(2).", "cyclespan");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file; [section] per subcommand or stage");

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a graph file");
  gen_cmd->add_option("--generator", gen.generator,
                      "gnp, near-dirac, hitting-time, circulant, complete, cycle or petersen");
  gen_cmd->add_option("--n", gen.n, "Vertex count");
  gen_cmd->add_option("--p", gen.p, "Edge probability");
  gen_cmd->add_option("--p-rule", gen.p_rule, "Density rule such as 5lnn/n");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--dirac-offset", gen.dirac_offset, "near-dirac: min degree ceil(n/2) + this");
  gen_cmd->add_option("--min-degree", gen.min_degree, "hitting-time: stop at this min degree");
  gen_cmd->add_option("--connections", gen.connections, "circulant connection set")->delimiter(',');
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  CheckFlags check;
  CLI::App* check_cmd = app.add_subcommand("check", "Pseudorandomness report");
  check_cmd->add_option("graph", check.graph, "Graph file")->required();
  check_cmd->add_option("--p", check.p, "Density (default: edge density)");
  check_cmd->add_option("--beta", check.beta, "Number, 'spectral' or '2sqrt(np)'");
  check_cmd->add_option("--eps", check.eps, "Slack for the degree and cut checks");
  check_cmd->add_option("--mode", check.mode, "auto, exhaustive or sampled");
  check_cmd->add_option("--samples", check.samples, "Samples per sampled check");
  check_cmd->add_option("--seed", check.seed, "Seed");
  check_cmd->add_option("--expansion-s", check.expansion_s, "Expansion set size");
  check_cmd->add_option("--expansion-d", check.expansion_d, "Expansion factor");

  std::string span_graph;
  std::size_t span_limit = 14;
  CLI::App* span_cmd = app.add_subcommand("span-verify", "Do all Hamilton cycles span the cycle space");
  span_cmd->add_option("graph", span_graph, "Graph file")->required();
  span_cmd->add_option("--max-vertices", span_limit, "Refuse larger graphs");

  std::string dec_graph, dec_out;
  PipelineFlags dec;
  CLI::App* dec_cmd = app.add_subcommand("decompose", "Hamilton-cycle basis of the cycle space");
  dec_cmd->add_option("graph", dec_graph, "Graph file")->required();
  dec_cmd->add_option("--out", dec_out, "Decomposition file (default stdout)");
  add_pipeline_options(dec_cmd, dec);

  std::string ex_graph, ex_basis, ex_target;
  CLI::App* ex_cmd = app.add_subcommand("express", "Write a cycle-space element as a sum of basis cycles");
  ex_cmd->add_option("graph", ex_graph, "Graph file")->required();
  ex_cmd->add_option("--basis", ex_basis, "Decomposition file")->required();
  ex_cmd->add_option("--target", ex_target, "Edge list")->required();

  std::string oh_graph, oh_r;
  PipelineFlags oh;
  CLI::App* oh_cmd = app.add_subcommand("odd-ham", "Hamilton cycle meeting r in an odd number of edges");
  oh_cmd->add_option("graph", oh_graph, "Graph file")->required();
  oh_cmd->add_option("--r", oh_r, "Edge list of r")->required();
  add_pipeline_options(oh_cmd, oh);

  ExperimentFlags exp;
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a grid of decompositions and write CSV");
  exp_cmd->add_option("spec", exp.spec, "Experiment file (same format as --config)");
  exp_cmd->add_option("--n", exp.n, "Vertex counts")->delimiter(',');
  exp_cmd->add_option("--p-rule", exp.p_rule, "Density rules; c is replaced by each --c")->delimiter(',');
  exp_cmd->add_option("--c", exp.c, "Coefficients for rules using c")->delimiter(',');
  exp_cmd->add_option("--seeds", exp.seeds, "Seeds per cell");
  exp_cmd->add_option("--first-seed", exp.first_seed, "Seeds run from here");
  exp_cmd->add_option("--generator", exp.generator, "gnp, near-dirac or hitting-time");
  exp_cmd->add_option("--dirac-offset", exp.dirac_offset, "near-dirac: min degree ceil(n/2) + this");
  exp_cmd->add_option("--min-degree", exp.min_degree, "hitting-time: stop at this min degree");
  exp_cmd->add_flag("--negative-control", exp.negative_control, "Allow even n");
  exp_cmd->add_option("--workers", exp.workers, "Worker threads (0: available parallelism)");
  exp_cmd->add_flag("--timing", exp.timing, "Record wall_ms (otherwise 0)");
  exp_cmd->add_option("--out", exp.out, "CSV file (default stdout)");
  exp_cmd->add_option("--emit-svg", exp.emit_svg, "Success rate against p as SVG");
  add_pipeline_options(exp_cmd, exp.pipeline);

  try {
    // Locate the subcommand and the files that feed it before CLI11 parses.
    std::vector<ConfigFile> files;
    std::size_t sub_pos = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (app.get_subcommand_no_throw(args[i])) {
        sub_pos = i;
        break;
      }
      if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[++i];
      } else if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
      }
    }
    if (!config_path.empty()) files.push_back(read_config(config_path));

    std::vector<std::string> argv(args.begin(), args.end());
    if (sub_pos < args.size()) {
      CLI::App* sub = app.get_subcommand(args[sub_pos]);
      std::set<std::string> given;
      for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));
      }
      if (sub == exp_cmd && sub_pos + 1 < args.size() && args[sub_pos + 1].rfind("-", 0) != 0) {
        ConfigFile spec = read_config(args[sub_pos + 1]);
        for (ConfigEntry& e : spec.entries) {
          if (e.section.empty()) e.section = "experiment";
        }
        files.push_back(std::move(spec));
      }
      const auto tokens = config_tokens(app, sub, files, given);
      argv.insert(argv.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, tokens.begin(), tokens.end());
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitUsage);
  } catch (const ConfigError& e) {
    return fail("config", e.what(), kExitUsage);
  } catch (const ParseError& e) {
    return fail("config", e.what(), kExitUsage);
  } catch (const IoError& e) {
    return fail("io", e.what(), kExitUsage);
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen, out);
    if (check_cmd->parsed()) return run_check(check, out);
    if (span_cmd->parsed()) return run_span_verify(span_graph, span_limit, out);
    if (dec_cmd->parsed()) return run_decompose(dec_graph, dec, dec_out, out);
    if (ex_cmd->parsed()) return run_express(ex_graph, ex_basis, ex_target, out);
    if (oh_cmd->parsed()) return run_odd_ham(oh_graph, oh_r, oh, out);
    if (exp_cmd->parsed()) return run_experiment_command(exp, out);
    return fail("usage", "no subcommand", kExitUsage);
  } catch (const IoError& e) {
    return fail("io", e.what(), kExitUsage);
  } catch (const ParseError& e) {
    return fail("parse", e.what(), kExitUsage);
  } catch (const LimitExceeded& e) {
    return fail("limit", e.what(), kExitUsage);
  } catch (const DimensionError& e) {
    return fail("input", e.what(), kExitUsage);
  } catch (const InvalidInput& e) {
    return fail("input", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitFalse);
  }
}

}  // namespace cyclespan
