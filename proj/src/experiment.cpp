#include "cyclespan/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <regex>
#include <thread>

#include "cyclespan/errors.hpp"

namespace cyclespan {

namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double parse_coefficient(const std::string& text, const std::string& rule) {
  if (text.empty()) return 1.0;
  try {
    std::size_t pos = 0;
    const double c = std::stod(text, &pos);
    if (pos == text.size() && std::isfinite(c) && c > 0) return c;
  } catch (const std::exception&) {
  }
  throw InvalidInput("bad coefficient in density rule '" + rule + "'");
}

std::string normalize_rule(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == ' ' || ch == '*' || ch == '\t'; }), s.end());
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    if (s.compare(i, 3, "(n)") == 0) {
      out += 'n';
      i += 3;
    } else if (s.compare(i, 3, "log") == 0) {
      out += "ln";
      i += 3;
    } else {
      out += s[i++];
    }
  }
  return out;
}

}  // namespace

double DensityRule::p(std::size_t n) const {
  const double nn = static_cast<double>(n);
  double p = coefficient;
  if (kind == Kind::log_over_n) p = coefficient * std::log(nn) / nn;
  if (kind == Kind::over_n) p = coefficient / nn;
  return std::clamp(p, 0.0, 1.0);
}

std::string DensityRule::text() const {
  switch (kind) {
    case Kind::constant: return format_number(coefficient);
    case Kind::log_over_n: return format_number(coefficient) + "lnn/n";
    case Kind::over_n: return format_number(coefficient) + "/n";
  }
  return {};
}

DensityRule parse_density_rule(const std::string& text) {
  const std::string s = normalize_rule(text);
  static const std::regex log_rule(R"(^([0-9.eE+-]*)lnn/n$)");
  static const std::regex inv_rule(R"(^([0-9.eE+-]*)/n$)");
  std::smatch m;
  DensityRule rule;
  if (std::regex_match(s, m, log_rule)) {
    rule.kind = DensityRule::Kind::log_over_n;
    rule.coefficient = parse_coefficient(m[1], text);
  } else if (std::regex_match(s, m, inv_rule)) {
    rule.kind = DensityRule::Kind::over_n;
    rule.coefficient = parse_coefficient(m[1], text);
  } else {
    rule.kind = DensityRule::Kind::constant;
    rule.coefficient = parse_coefficient(s.empty() ? "x" : s, text);
    if (rule.coefficient > 1.0) throw InvalidInput("edge probability above 1 in '" + text + "'");
  }
  return rule;
}

std::vector<DensityRule> expand_density_rules(const std::vector<std::string>& rules, const std::vector<double>& cs) {
  std::vector<DensityRule> out;
  for (const std::string& rule : rules) {
    const auto c = rule.find('c');
    if (c == std::string::npos) {
      out.push_back(parse_density_rule(rule));
      continue;
    }
    if (cs.empty()) throw InvalidInput("density rule '" + rule + "' uses c but no c values are given");
    for (double value : cs) {
      std::string concrete = rule;
      concrete.replace(c, 1, format_number(value));
      out.push_back(parse_density_rule(concrete));
    }
  }
  return out;
}

const char* to_string(Generator generator) {
  switch (generator) {
    case Generator::gnp: return "gnp";
    case Generator::near_dirac: return "near-dirac";
    case Generator::hitting_time: return "hitting-time";
  }
  return "unknown";
}

Generator parse_generator(const std::string& name) {
  if (name == "gnp") return Generator::gnp;
  if (name == "near-dirac") return Generator::near_dirac;
  if (name == "hitting-time") return Generator::hitting_time;
  throw InvalidInput("unknown generator '" + name + "'");
}

Graph generate(const GeneratorSpec& spec) {
  switch (spec.generator) {
    case Generator::gnp: return gnp_generate({spec.n, spec.p, spec.seed});
    case Generator::near_dirac:
      return densify_min_degree(gnp_generate({spec.n, spec.p, spec.seed}), (spec.n + 1) / 2 + spec.dirac_offset,
                                spec.seed);
    case Generator::hitting_time: return random_process_until_min_degree(spec.n, spec.min_degree, spec.seed);
  }
  throw InvalidInput("unknown generator");
}

void validate_experiment(const ExperimentSpec& spec) {
  if (spec.n_values.empty()) throw InvalidInput("experiment has no n values");
  if (spec.seeds.empty()) throw InvalidInput("experiment has no seeds");
  if (spec.rules.empty() && spec.generator != Generator::hitting_time) {
    throw InvalidInput("experiment has no density rules");
  }
  for (std::uint64_t s : spec.seeds) {
    if (s == 0) throw InvalidInput("seeds must be at least 1");
  }
  for (std::size_t n : spec.n_values) {
    if (n % 2 == 0 && !spec.negative_control) {
      throw InvalidInput("even n = " + std::to_string(n) + " is only allowed in a negative control");
    }
  }
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  validate_experiment(spec);
  struct Task {
    std::size_t n;
    const DensityRule* rule;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t n : spec.n_values) {
    if (spec.generator == Generator::hitting_time) {
      for (std::uint64_t s : spec.seeds) tasks.push_back({n, nullptr, s});
      continue;
    }
    for (const DensityRule& rule : spec.rules) {
      for (std::uint64_t s : spec.seeds) tasks.push_back({n, &rule, s});
    }
  }

  std::vector<ExperimentRow> rows(tasks.size());
  auto run_one = [&](std::size_t i) {
    const Task& t = tasks[i];
    const auto start = std::chrono::steady_clock::now();
    GeneratorSpec gs;
    gs.generator = spec.generator;
    gs.n = t.n;
    gs.p = t.rule ? t.rule->p(t.n) : 0.0;
    gs.seed = t.seed;
    gs.dirac_offset = spec.dirac_offset;
    gs.min_degree = spec.min_degree;
    const Graph g = generate(gs);
    PipelineConfig cfg = spec.pipeline;
    cfg.seed = t.seed;
    const DecompositionResult result = hamilton_basis(g, cfg);

    ExperimentRow& row = rows[i];
    row.seed = t.seed;
    row.n = t.n;
    if (t.rule) {
      row.p_rule = t.rule->text();
      row.p = gs.p;
    } else {
      row.p_rule = "min-degree=" + std::to_string(spec.min_degree);
      const double pairs = static_cast<double>(t.n) * static_cast<double>(t.n - 1) / 2.0;
      row.p = pairs > 0 ? static_cast<double>(g.edge_count()) / pairs : 0.0;
    }
    row.variant = to_string(result.variant);
    row.success = result.success;
    row.rank = result.rank_achieved;
    row.target_rank = result.rank_target;
    row.iterations = result.iterations.size();
    row.switcher_retries = result.switcher_retries;
    row.posa_rotations = result.posa_rotations;
    if (spec.timing) {
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };

  std::size_t workers = spec.workers ? spec.workers : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        run_one(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

const char* const kCsvHeader =
    "seed,n,p_rule,p,variant,success,rank,target_rank,iterations,switcher_retries,posa_rotations,wall_ms";

void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ExperimentRow& r : rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.0f", r.wall_ms);
    out << r.seed << ',' << r.n << ',' << r.p_rule << ',' << format_number(r.p) << ',' << r.variant << ','
        << (r.success ? 1 : 0) << ',' << r.rank << ',' << r.target_rank << ',' << r.iterations << ','
        << r.switcher_retries << ',' << r.posa_rotations << ',' << ms << '\n';
  }
}

void write_svg(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  // (n, p) -> successes, runs
  std::map<std::size_t, std::map<double, std::pair<int, int>>> series;
  double p_max = 0.0;
  for (const ExperimentRow& r : rows) {
    auto& cell = series[r.n][r.p];
    cell.first += r.success;
    ++cell.second;
    p_max = std::max(p_max, r.p);
  }
  if (p_max <= 0.0) p_max = 1.0;

  const double width = 640, height = 400, left = 60, right = 140, top = 20, bottom = 50;
  const double pw = width - left - right, ph = height - top - bottom;
  auto x_of = [&](double p) { return left + pw * p / p_max; };
  auto y_of = [&](double rate) { return top + ph * (1.0 - rate); };
  static const char* const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double rate = i / 4.0, p = p_max * i / 4.0;
    out << "<text x=\"" << left - 8 << "\" y=\"" << y_of(rate) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
        << format_number(rate) << "</text>\n";
    out << "<text x=\"" << x_of(p) << "\" y=\"" << top + ph + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << format_number(p) << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">p</text>\n";
  out << "<text x=\"14\" y=\"" << top + ph / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << top + ph / 2
      << ")\" text-anchor=\"middle\">success rate</text>\n";

  std::size_t k = 0;
  for (const auto& [n, cells] : series) {
    const char* color = colors[k % std::size(colors)];
    for (const auto& [p, counts] : cells) {
      const double rate = static_cast<double>(counts.first) / counts.second;
      out << "<circle cx=\"" << x_of(p) << "\" cy=\"" << y_of(rate) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 16 * static_cast<double>(k + 1);
    out << "<circle cx=\"" << width - right + 20 << "\" cy=\"" << ly - 4 << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << width - right + 30 << "\" y=\"" << ly << "\" font-size=\"11\">n = " << n << "</text>\n";
    ++k;
  }
  out << "</svg>\n";
}

}  // namespace cyclespan
