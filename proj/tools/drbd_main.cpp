#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drbd/casestudy.hpp"
#include "drbd/curve.hpp"
#include "drbd/dsl.hpp"
#include "drbd/errors.hpp"
#include "drbd/montecarlo.hpp"
#include "drbd/reliability.hpp"
#include "drbd/rewrite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitModel = 2;    // parse or semantic error
constexpr int kExitNumeric = 3;  // quadrature/rewrite/sampling failure
constexpr int kExitOracle = 4;   // algebra and simulation disagree

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw drbd::ModelError("cannot open model file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

drbd::ModelDocument load_document(const std::string& path) {
  return drbd::parse_model(read_file(path), std::filesystem::path(path).stem().string());
}

drbd::CiLevel ci_from_int(int ci) {
  return ci == 95 ? drbd::CiLevel::P95 : drbd::CiLevel::P99;
}

// "id=value" pairs from repeatable --rate/--dormancy flags.
std::map<std::string, double> parse_overrides(const std::vector<std::string>& entries,
                                              const char* flag) {
  std::map<std::string, double> out;
  for (const auto& entry : entries) {
    auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == entry.size()) {
      throw drbd::ModelError(std::string("--") + flag + " expects <id>=<value>, got '" + entry +
                             "'");
    }
    try {
      out[entry.substr(0, eq)] = std::stod(entry.substr(eq + 1));
    } catch (const std::exception&) {
      throw drbd::ModelError(std::string("--") + flag + ": malformed number in '" + entry + "'");
    }
  }
  return out;
}

void print_sample(std::ostream& os, const drbd::Sample& s) {
  for (const auto& [id, t] : s.basic) {
    os << "  " << id << " = " << (t.is_inf() ? "inf" : drbd::format_double(t.value())) << "\n";
  }
  for (const auto& [id, d] : s.spare) {
    os << "  " << id << " = (dormant "
       << (d.dormant.is_inf() ? "inf" : drbd::format_double(d.dormant.value())) << ", active +"
       << drbd::format_double(d.active_offset) << ")\n";
  }
}

struct GridFlags {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 100;
  bool t1_set = false;
  bool steps_set = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--t0", t0, "Grid start time (default 0)");
    cmd->add_option("--t1", t1, "Grid end time")->each([this](const std::string&) {
      t1_set = true;
    });
    cmd->add_option("--steps", steps, "Grid intervals (rows = steps + 1)")
        ->each([this](const std::string&) { steps_set = true; });
  }
};

int cmd_rel(const std::string& file, const GridFlags& grid, double tol) {
  drbd::DrbdModel model = load_document(file).to_model();
  std::vector<drbd::CurveRow> rows;
  for (double t : drbd::time_grid(grid.t0, grid.t1, grid.steps)) {
    rows.push_back({t, drbd::rel_expr(model, t, tol), {}, {}});
  }
  drbd::write_csv(std::cout, rows);
  return kExitOk;
}

int cmd_simplify(const std::string& file, bool expand) {
  drbd::ModelDocument doc = load_document(file);
  drbd::RuleSet rules = drbd::builtin_rules();
  if (expand) rules = rules.with_mode(drbd::RuleMode::Expand);
  std::cout << drbd::format_expr(drbd::simplify(doc.system, rules)) << "\n";
  return kExitOk;
}

int cmd_simulate(const std::string& file, const GridFlags& grid, const drbd::McConfig& cfg) {
  drbd::DrbdModel model = load_document(file).to_model();
  std::vector<double> ts = drbd::time_grid(grid.t0, grid.t1, grid.steps);
  std::vector<drbd::McEstimate> estimates = drbd::estimate_curve(model, ts, cfg);
  std::vector<drbd::CurveRow> rows;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    rows.push_back({ts[i], {}, estimates[i].rel_hat, estimates[i].half_width});
  }
  drbd::write_csv(std::cout, rows);
  return kExitOk;
}

int cmd_compare(const std::string& file, double t, double sigmas, double tol,
                const drbd::McConfig& cfg) {
  drbd::DrbdModel model = load_document(file).to_model();
  drbd::CompareResult r = drbd::compare(model, t, sigmas, cfg, tol);
  std::cout << "t,rel,mc_rel,mc_halfwidth,z\n"
            << drbd::format_sig9(t) << ',' << drbd::format_sig9(r.algebraic) << ','
            << drbd::format_sig9(r.mc) << ',' << drbd::format_sig9(r.half_width) << ','
            << drbd::format_sig9(r.z) << "\n";
  if (r.verdict == drbd::CompareVerdict::Discrepancy) {
    std::cerr << "discrepancy: |algebraic - simulated| = "
              << drbd::format_sig9(std::abs(r.algebraic - r.mc)) << " exceeds " << sigmas
              << " standard errors (z = " << drbd::format_sig9(r.z) << ")\n";
    return kExitOracle;
  }
  std::cerr << "consistent (z = " << drbd::format_sig9(r.z) << " <= " << sigmas << ")\n";
  return kExitOk;
}

int cmd_equiv(const std::string& file1, const std::string& file2, std::uint64_t samples,
              std::uint64_t seed) {
  drbd::ModelDocument doc1 = load_document(file1);
  drbd::ModelDocument doc2 = load_document(file2);

  // Union of the declarations; a shared id must be declared identically.
  drbd::ModelDocument merged = doc1;
  for (const auto& b : doc2.blocks) {
    bool seen = false;
    for (const auto& mine : merged.blocks) {
      if (mine.id == b.id) {
        seen = true;
        if (!(mine.dist == b.dist)) {
          throw drbd::ModelError("block '" + b.id + "' is declared differently in the two files");
        }
      }
    }
    for (const auto& sp : merged.spares) {
      if (sp.id == b.id) throw drbd::ModelError("'" + b.id + "' is a spare in one file only");
    }
    if (!seen) merged.blocks.push_back(b);
  }
  for (const auto& sp : doc2.spares) {
    bool seen = false;
    for (const auto& mine : merged.spares) {
      if (mine.id == sp.id) {
        seen = true;
        if (!(mine.active == sp.active) || mine.dormancy != sp.dormancy) {
          throw drbd::ModelError("spare '" + sp.id + "' is declared differently in the two files");
        }
      }
    }
    for (const auto& b : merged.blocks) {
      if (b.id == sp.id) throw drbd::ModelError("'" + sp.id + "' is a spare in one file only");
    }
    if (!seen) merged.spares.push_back(sp);
  }
  merged.system = doc1.system;
  drbd::DrbdModel model = merged.to_model();

  drbd::EquivResult r = drbd::check_equiv(doc1.system, doc2.system, model, samples, seed);
  if (r.equivalent) {
    std::cout << "equivalent up to " << r.samples_used << " samples\n";
    return kExitOk;
  }
  std::cout << "counterexample after " << r.samples_used << " samples:\n";
  print_sample(std::cout, *r.counterexample);
  std::cout << "  lhs = "
            << (eval_expr(doc1.system, *r.counterexample).is_inf()
                    ? "inf"
                    : drbd::format_double(eval_expr(doc1.system, *r.counterexample).value()))
            << ", rhs = "
            << (eval_expr(doc2.system, *r.counterexample).is_inf()
                    ? "inf"
                    : drbd::format_double(eval_expr(doc2.system, *r.counterexample).value()))
            << "\n";
  return kExitOracle;
}

int cmd_casestudy(const std::string& name, GridFlags grid, double tol,
                  const std::vector<std::string>& rates,
                  const std::vector<std::string>& dormancies) {
  drbd::CaseOverrides overrides;
  overrides.rates = parse_overrides(rates, "rate");
  overrides.dormancy = parse_overrides(dormancies, "dormancy");
  drbd::DrbdModel model = drbd::case_study(name, overrides);
  drbd::GridSpec defaults = drbd::default_grid(name);
  if (!grid.t1_set) grid.t1 = defaults.t1;
  if (!grid.steps_set) grid.steps = defaults.steps;
  std::vector<drbd::CurveRow> rows;
  for (double t : drbd::time_grid(grid.t0, grid.t1, grid.steps)) {
    rows.push_back({t, drbd::rel_expr(model, t, tol), {}, {}});
  }
  drbd::write_csv(std::cout, rows);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DRBD failure-time algebra: reliability evaluation, simplification and Monte "
               "Carlo validation"};
  app.require_subcommand(1);

  std::string file, file2, name;
  GridFlags grid;
  double tol = drbd::kDefaultRelTol;
  double t = 1.0;
  double sigmas = 3.0;
  bool expand = false;
  drbd::McConfig mc;
  int ci = 99;
  std::uint64_t equiv_samples = 100000;
  std::vector<std::string> rates, dormancies;

  auto add_mc_flags = [&](CLI::App* cmd) {
    cmd->add_option("--samples", mc.n, "Monte Carlo sample count (default 1e6)");
    cmd->add_option("--seed", mc.seed, "Random seed")->envname("DRBD_SEED");
    cmd->add_option("--ci", ci, "Confidence level")->check(CLI::IsMember({95, 99}));
    cmd->add_option("--workers", mc.workers, "Worker threads (result is worker-independent)");
  };

  CLI::App* rel = app.add_subcommand("rel", "Closed-form reliability curve as CSV");
  rel->add_option("model", file, "Model file")->required();
  grid.attach(rel);
  rel->add_option("--tol", tol, "Quadrature tolerance (default 1e-9)");

  CLI::App* simp = app.add_subcommand("simplify", "Reduce the structure function to normal form");
  simp->add_option("model", file, "Model file")->required();
  simp->add_flag("--expand", expand, "Enable distributivity/expansion rules (may not converge)");

  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo reliability curve as CSV");
  sim->add_option("model", file, "Model file")->required();
  grid.attach(sim);
  add_mc_flags(sim);

  CLI::App* cmp = app.add_subcommand("compare", "Cross-check the algebraic formula against the "
                                                "Monte Carlo oracle at one time point");
  cmp->add_option("model", file, "Model file")->required();
  cmp->add_option("--t", t, "Time point")->required();
  cmp->add_option("--sigmas", sigmas, "Gate width in standard errors (default 3)");
  cmp->add_option("--tol", tol, "Quadrature tolerance (default 1e-9)");
  add_mc_flags(cmp);

  CLI::App* eq = app.add_subcommand("equiv", "Sampled equivalence of two model files' systems");
  eq->add_option("model1", file, "First model file")->required();
  eq->add_option("model2", file2, "Second model file")->required();
  eq->add_option("--samples", equiv_samples, "Sample count (default 1e5)");
  eq->add_option("--seed", mc.seed, "Random seed")->envname("DRBD_SEED");

  CLI::App* cs = app.add_subcommand("casestudy", "Built-in dbw / sen / sen-nospare curves");
  cs->add_option("name", name, "Case study: dbw, sen or sen-nospare")->required();
  grid.attach(cs);
  cs->add_option("--tol", tol, "Quadrature tolerance (default 1e-9)");
  cs->add_option("--rate", rates, "Override a block's failure rate, <id>=<rate>");
  cs->add_option("--dormancy", dormancies, "Override a spare's dormancy factor, <id>=<alpha>");

  CLI11_PARSE(app, argc, argv);
  mc.ci = ci_from_int(ci);

  try {
    if (rel->parsed()) return cmd_rel(file, grid, tol);
    if (simp->parsed()) return cmd_simplify(file, expand);
    if (sim->parsed()) return cmd_simulate(file, grid, mc);
    if (cmp->parsed()) return cmd_compare(file, t, sigmas, tol, mc);
    if (eq->parsed()) return cmd_equiv(file, file2, equiv_samples, mc.seed);
    if (cs->parsed()) return cmd_casestudy(name, grid, tol, rates, dormancies);
  } catch (const drbd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const drbd::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const drbd::StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitModel;
  } catch (const drbd::RewriteBudgetError& e) {
    std::cerr << "error: " << e.what() << "\npartial result: " << drbd::format_expr(e.partial())
              << "\n";
    return kExitNumeric;
  } catch (const drbd::Error& e) {
    // NumericError, SamplingError and anything else computational.
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
