#include "viscycle/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "viscycle/fringe_lab.hpp"
#include "viscycle/gram.hpp"
#include "viscycle/inequalities.hpp"
#include "viscycle/interferometer.hpp"
#include "viscycle/optimizer.hpp"
#include "viscycle/robustness.hpp"

namespace viscycle::cli {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(std::size_t x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "true" : "false"; }

class Csv {
 public:
  Csv(std::ostream& out, const RunConfig& config, const std::string& params) : out_(out) {
    out_ << "# viscycle " << command_name(config.command);
    if (!params.empty()) out_ << ' ' << params;
    out_ << '\n';
  }

  void header(std::initializer_list<std::string_view> cols) { line(cols); }

  void row(std::initializer_list<std::string_view> cols) { line(cols); }

  void kv(std::string_view key, const std::string& value) { line({key, value}); }

 private:
  void line(std::initializer_list<std::string_view> cols) {
    bool first = true;
    for (auto c : cols) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
  }

  std::ostream& out_;
};

std::string edge_label(std::size_t i, std::size_t j) {
  return "r_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

}  // namespace

int cmd_bounds(const RunConfig& config, std::ostream& out) {
  const std::size_t n = config.n;
  const auto gap = asymptotic_gap(n);
  Csv csv(out, config, "n=" + num(n));
  csv.header({"quantity", "value"});
  csv.kv("n", num(n));
  csv.kv("classical_bound", num(classical_bound(n)));
  csv.kv("quantum_max", num(quantum_max(n)));
  csv.kv("eta_min", num(eta_min(n)));
  csv.kv("gap", num(gap.exact_gap));
  csv.kv("gap_first_order", num(gap.first_order_gap));
  return kExitOk;
}

int cmd_optimize(const RunConfig& config, std::ostream& out) {
  OptimizerOptions opts;
  opts.restarts = config.restarts;
  opts.seed = config.seed;
  opts.threads = config.threads;
  const auto r = maximize_cycle(config.n, opts);
  const auto c = canonicalize(r.best);
  const double qmax = quantum_max(config.n);

  Csv csv(out, config,
          "n=" + num(config.n) + " restarts=" + num(config.restarts) + " seed=" +
              std::to_string(config.seed));
  csv.header({"quantity", "value"});
  csv.kv("n", num(config.n));
  csv.kv("s_value", num(r.s_value));
  csv.kv("quantum_max", num(qmax));
  csv.kv("abs_error", num(std::abs(r.s_value - qmax)));
  csv.kv("matched_closed_form", flag(r.matched_closed_form));
  csv.kv("best_restart", num(r.best_restart));
  csv.kv("iterations", num(r.iterations));
  csv.kv("canonical_residual", num(c.residual));
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    csv.kv("step_" + std::to_string(k + 1), num(c.steps[k]));
  }
  for (std::size_t k = 0; k < c.angles.size(); ++k) {
    csv.kv("angle_" + std::to_string(k + 1), num(c.angles[k]));
  }
  return kExitOk;
}

int cmd_certify(const RunConfig& config, std::ostream& out) {
  const auto states = resolve_states(config);
  const std::size_t n = states.size();
  const auto r = overlap_matrix(states);
  const double s = cycle_value(r);
  const double observed = config.eta * config.eta * s;
  const auto report = make_cycle_report(observed, n);

  std::string params = "n=" + num(n) + " eta=" + num(config.eta);
  if (config.preset && !config.states) params += " preset=" + *config.preset;
  Csv csv(out, config, params);
  csv.header({"quantity", "value"});
  csv.kv("n", num(n));
  for (std::size_t i = 0; i + 1 < n; ++i) csv.kv(edge_label(i, i + 1), num(r(i, i + 1)));
  csv.kv(edge_label(0, n - 1), num(r(0, n - 1)));
  csv.kv("s_value", num(s));
  csv.kv("eta", num(config.eta));
  csv.kv("observed_s_value", num(report.s_value));
  csv.kv("classical_bound", num(report.classical_bound));
  csv.kv("quantum_max", num(report.quantum_max));
  csv.kv("margin", num(report.margin));
  if (n == 3) {
    for (const auto& f : three_path_facets(r)) {
      csv.kv("facet " + f.label, num(f.lhs));
      csv.kv("facet " + f.label + " satisfied", flag(f.satisfied));
    }
    csv.kv("gram_min_r13", num(min_r13(r(0, 1), r(1, 2))));
    csv.kv("gram_feasible", flag(feasible(r(0, 1), r(1, 2), r(0, 2))));
  }
  csv.kv("noise_assumption", kNoiseAssumption);
  csv.kv("violation", flag(report.violates_classical));
  return report.violates_classical ? kExitOk : kExitNoViolation;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  auto states = resolve_states(config);
  const std::size_t n = states.size();
  ExperimentOptions opts;
  opts.shots_per_point = config.shots;
  opts.seed = config.seed;
  opts.bootstrap = config.bootstrap;
  const InterferometerSpec spec =
      config.weights ? InterferometerSpec::from_path_probabilities(*config.weights, std::move(states))
                     : InterferometerSpec::symmetric(std::move(states));
  opts.allow_asymmetric = config.weights.has_value();
  const auto rep = run_experiment(spec, NoiseModel(config.eta), opts);

  std::string params = "n=" + num(n) + " eta=" + num(config.eta) +
                       " shots=" + std::to_string(config.shots) +
                       " seed=" + std::to_string(config.seed);
  if (config.preset && !config.states) params += " preset=" + *config.preset;
  Csv csv(out, config, params);
  csv.header({"kind", "i", "j", "true_value", "estimate", "std_err"});
  for (const auto& p : rep.pairs) {
    csv.row({"pair", std::to_string(p.i + 1), std::to_string(p.j + 1), num(p.true_visibility),
             num(p.estimate.v_hat), num(p.estimate.std_err)});
  }
  csv.row({"s_value", "", "", num(rep.s_true), num(rep.cycle.s_value), num(rep.s_std_err)});
  if (rep.bootstrap_std_err) {
    csv.row({"s_value_bootstrap", "", "", "", "", num(*rep.bootstrap_std_err)});
  }
  csv.row({"classical_bound", "", "", num(rep.cycle.classical_bound), "", ""});
  csv.row({"z_score", "", "", "", num(rep.z_score), ""});
  csv.row({"certified", "", "", "", flag(rep.violation_certified), ""});

  if (config.scan_output) {
    std::ofstream scans(*config.scan_output, std::ios::binary);
    if (!scans) throw UsageError("cannot write scan output '" + *config.scan_output + "'");
    Csv scsv(scans, config, params);
    scsv.header({"i", "j", "phase", "counts", "shots_per_point"});
    for (const auto& p : rep.pairs) {
      for (std::size_t k = 0; k < p.scan.size(); ++k) {
        scsv.row({std::to_string(p.i + 1), std::to_string(p.j + 1), num(p.scan.phases()[k]),
                  num(p.scan.counts()[k]), std::to_string(p.scan.shots_per_point())});
      }
    }
  }
  return kExitOk;
}

int cmd_gram(const RunConfig& config, std::ostream& out) {
  const double r12 = *config.r12;
  const double r23 = *config.r23;
  std::string params = "r12=" + num(r12) + " r23=" + num(r23);
  if (config.r13) params += " r13=" + num(*config.r13) + " phase=" + num(config.phase);
  Csv csv(out, config, params);
  csv.header({"quantity", "value"});
  csv.kv("min_r13", num(min_r13(r12, r23)));
  csv.kv("max_r13", num(max_r13(r12, r23)));
  csv.kv("max_s_given", num(max_S_given(r12, r23)));
  if (config.r13) {
    csv.kv("det", num(gram_det({r12, r23, *config.r13, config.phase})));
    csv.kv("feasible", flag(feasible(r12, r23, *config.r13)));
    csv.kv("s_value", num(r12 + r23 - *config.r13));
  }
  return kExitOk;
}

int cmd_table(const RunConfig& config, std::ostream& out) {
  if (config.format == Format::csv) {
    Csv csv(out, config, "n_max=" + num(config.n));
    csv.header({"n", "classical_bound", "quantum_max", "eta_min"});
    for (std::size_t n = 3; n <= config.n; ++n) {
      csv.row({num(n), num(classical_bound(n)), num(quantum_max(n)), num(eta_min(n))});
    }
    return kExitOk;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%5s  %15s  %11s  %7s\n", "n", "classical_bound", "quantum_max",
                "eta_min");
  out << buf;
  for (std::size_t n = 3; n <= config.n; ++n) {
    std::snprintf(buf, sizeof buf, "%5zu  %15.0f  %11.3f  %7.3f\n", n, classical_bound(n),
                  quantum_max(n), eta_min(n));
    out << buf;
  }
  return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  validate(config);
  switch (config.command) {
    case Command::bounds: return cmd_bounds(config, out);
    case Command::optimize: return cmd_optimize(config, out);
    case Command::certify: return cmd_certify(config, out);
    case Command::simulate: return cmd_simulate(config, out);
    case Command::gram: return cmd_gram(config, out);
    case Command::table: return cmd_table(config, out);
  }
  return kExitUsage;
}

}  // namespace viscycle::cli
