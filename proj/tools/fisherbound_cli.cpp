// Command-line front end for the fisherbound C API.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fisherbound/fisherbound.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct NumericError {
  std::string message;
};

void check(fb_status status) {
  if (status != FB_OK) throw NumericError{fb_last_error()};
}

struct Options {
  std::string model = "gaussian";
  double theta = 0.0;
  double gamma = 0.0;
  double zeta = 1.0;
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 21;
  std::string mode = "auto";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  double fd_step = 0.01;
  std::string crn = "on";
  std::string format = "csv";
  std::string out;
  std::string figure;
  bool monte_carlo = false;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string loss(double db) { return db == FB_NEGATIVE_INFINITY_DB ? "-inf" : num(db); }

// Non-finite values become JSON strings.
std::string json_num(const std::string& text) {
  const bool finite = text != "inf" && text != "-inf" && text != "nan";
  return finite ? text : "\"" + text + "\"";
}

std::string json_str(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// A flat table of preformatted cells; text columns are quoted in JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<bool> text;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  os << "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << (r ? ",\n " : "\n ") << "{";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const auto& cell = t.rows[r][c];
      os << (c ? ", " : "") << json_str(t.columns[c]) << ": ";
      if (t.text[c]) {
        os << json_str(cell);
      } else if (cell.empty()) {
        os << "null";
      } else {
        os << json_num(cell);
      }
    }
    os << "}";
  }
  os << "\n]\n";
}

void emit(const Options& o, const Table& t) {
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) throw NumericError{"cannot open output file '" + o.out + "'"};
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  if (o.format == "json") {
    write_json(os, t);
  } else {
    write_csv(os, t);
  }
  os.flush();
  if (!os) throw NumericError{"failed to write output"};
}

fb_sim_config sim_config(const Options& o) {
  fb_sim_config c = fb_sim_config_default();
  c.n_samples = o.samples;
  c.base_seed = o.seed;
  c.fd_step = o.fd_step;
  c.use_common_random_numbers = o.crn == "on" ? 1 : 0;
  return c;
}

using ModelHandle = std::unique_ptr<fb_model, decltype(&fb_model_destroy)>;

fb_model_kind model_kind(const Options& o) {
  fb_model_kind kind{};
  check(fb_model_kind_from_name(o.model.c_str(), &kind));
  return kind;
}

ModelHandle make_model(const Options& o) {
  fb_model* model = nullptr;
  check(fb_model_create(model_kind(o), o.gamma, o.zeta, &model));
  return {model, &fb_model_destroy};
}

fb_sweep_mode sweep_mode(const Options& o) {
  if (o.mode == "analytic") return FB_SWEEP_ANALYTIC;
  if (o.mode == "mc") return FB_SWEEP_MONTE_CARLO;
  return model_kind(o) == FB_MODEL_SOFT_LIMITER ? FB_SWEEP_MONTE_CARLO : FB_SWEEP_ANALYTIC;
}

Table sweep_table(const Options& o, const std::vector<double>& grid) {
  auto model = make_model(o);
  const fb_sim_config config = sim_config(o);
  fb_sweep* raw = nullptr;
  check(fb_sweep_run(model.get(), grid.data(), grid.size(), &config, sweep_mode(o), &raw));
  std::unique_ptr<fb_sweep, decltype(&fb_sweep_destroy)> sweep(raw, &fb_sweep_destroy);

  Table t;
  t.columns = {"theta", "mu1",     "mu2",     "mu3bar",  "mu4bar",  "dmu1", "dmu2",
               "beta_star", "s_value", "f_exact", "f_input", "loss_db", "case"};
  t.text.assign(t.columns.size(), false);
  t.text.back() = true;
  for (std::size_t i = 0; i < fb_sweep_size(sweep.get()); ++i) {
    fb_sweep_record r{};
    check(fb_sweep_record_at(sweep.get(), i, &r));
    const auto& m = r.moments;
    t.rows.push_back({num(m.theta), num(m.mu1), num(m.mu2), num(m.mu3bar), num(m.mu4bar),
                      num(m.dmu1), num(m.dmu2), num(r.beta_star), num(r.s_value),
                      r.has_f_exact ? num(r.f_exact) : std::string(), num(r.f_input),
                      loss(r.loss_db), fb_case_name(r.bound_case)});
  }
  return t;
}

int run_bound(const Options& o) {
  emit(o, sweep_table(o, {o.theta}));
  return 0;
}

int run_sweep(const Options& o) {
  std::vector<double> grid(o.steps);
  for (std::size_t i = 0; i < o.steps; ++i) {
    grid[i] = o.min + (o.max - o.min) * static_cast<double>(i) / static_cast<double>(o.steps - 1);
  }
  grid.back() = o.max;
  emit(o, sweep_table(o, grid));
  return 0;
}

int run_fisher(const Options& o) {
  auto model = make_model(o);
  int has = 0;
  double value = 0.0;
  std::string method = "closed-form";
  check(fb_model_exact_fisher(model.get(), o.theta, &has, &value));
  if (!has) {
    if (model_kind(o) != FB_MODEL_SQUARING) {
      std::ostringstream msg;
      msg << "no exact Fisher information for model '" << o.model << "' at theta=" << o.theta;
      throw NumericError{msg.str()};
    }
    check(fb_fisher_oracle_squaring(o.theta, &value));
    method = "quadrature";
  }
  Table t;
  t.columns = {"theta", "f_exact", "method"};
  t.text = {false, false, true};
  t.rows.push_back({num(o.theta), num(value), method});
  emit(o, t);
  return 0;
}

int run_reproduce(const Options& o) {
  static const std::map<std::string, int> figures = {
      {"fig1", 1}, {"fig2", 2}, {"fig3", 3}, {"fig4", 4}, {"fig5", 5}};
  const fb_sim_config config = sim_config(o);
  fb_table* raw = nullptr;
  check(fb_reproduce_figure(figures.at(o.figure), &config, &raw));
  std::unique_ptr<fb_table, decltype(&fb_table_destroy)> table(raw, &fb_table_destroy);

  Table t;
  for (std::size_t c = 0; c < fb_table_columns(table.get()); ++c) {
    t.columns.emplace_back(fb_table_column_name(table.get(), c));
  }
  t.text.assign(t.columns.size(), false);
  for (std::size_t r = 0; r < fb_table_rows(table.get()); ++r) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const double v = fb_table_value(table.get(), r, c);
      row.push_back(c == 0 ? num(v) : loss(v));
    }
    t.rows.push_back(std::move(row));
  }
  emit(o, t);

  int found = 0;
  double crossing = 0.0;
  fb_table_crossover(table.get(), &found, &crossing);
  if (found) std::cerr << "crossover theta=" << num(crossing) << '\n';
  return 0;
}

int run_verify(const Options& o) {
  fb_report* raw = nullptr;
  check(fb_verify_run(o.monte_carlo ? 1 : 0, o.monte_carlo ? o.samples : 0, o.seed, &raw));
  std::unique_ptr<fb_report, decltype(&fb_report_destroy)> report(raw, &fb_report_destroy);

  Table t;
  t.columns = {"check", "result", "observed", "tolerance", "description"};
  t.text = {true, true, false, false, true};
  bool all_passed = true;
  for (std::size_t i = 0; i < fb_report_size(report.get()); ++i) {
    const char* id = nullptr;
    const char* description = nullptr;
    int passed = 0;
    double observed = 0.0, tolerance = 0.0;
    check(fb_report_entry(report.get(), i, &id, &description, &passed, &observed, &tolerance));
    all_passed = all_passed && passed;
    t.rows.push_back({id, passed ? "PASS" : "FAIL", num(observed), num(tolerance), description});
  }
  if (o.format == "csv" && o.out.empty()) {
    for (const auto& row : t.rows) {
      std::printf("%-22s %s  observed=%-24s tol=%-10s %s\n", row[0].c_str(), row[1].c_str(),
                  row[2].c_str(), row[3].c_str(), row[4].c_str());
    }
  } else {
    emit(o, t);
  }
  return all_passed ? 0 : kExitNumeric;
}

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "Model name")
      ->check(CLI::IsMember({"gaussian", "exponential", "laplace-scale", "bernoulli", "poisson",
                             "hard-limiter", "squaring", "soft-limiter"}));
  cmd->add_option("--gamma", o.gamma, "Hard-limiter threshold");
  cmd->add_option("--zeta", o.zeta, "Soft-limiter saturation scale");
}

void add_sim_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--samples", o.samples, "Monte-Carlo samples per point");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--fd-step", o.fd_step, "Finite-difference step");
  cmd->add_option("--crn", o.crn, "Common random numbers")->check(CLI::IsMember({"on", "off"}));
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Output file (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Moment-based lower bounds on Fisher information"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fb_version());

  auto* bound = app.add_subcommand("bound", "Evaluate the bound at one theta");
  auto* fisher = app.add_subcommand("fisher", "Exact Fisher information at one theta");
  auto* sweep = app.add_subcommand("sweep", "Evaluate the bound on a uniform grid");
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate a figure table");
  auto* verify = app.add_subcommand("verify", "Run the verification suites");

  for (auto* cmd : {bound, fisher, sweep}) {
    add_model_flags(cmd, o);
    add_output_flags(cmd, o);
  }
  for (auto* cmd : {bound, fisher}) cmd->add_option("--theta", o.theta, "Parameter value")->required();
  for (auto* cmd : {bound, sweep}) {
    add_sim_flags(cmd, o);
    cmd->add_option("--mode", o.mode, "Moment source")
        ->check(CLI::IsMember({"auto", "analytic", "mc"}));
  }
  sweep->add_option("--min", o.min, "Grid start");
  sweep->add_option("--max", o.max, "Grid end");
  sweep->add_option("--steps", o.steps, "Grid points");

  reproduce->add_option("figure", o.figure, "fig1 .. fig5")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5"}));
  add_sim_flags(reproduce, o);
  add_output_flags(reproduce, o);

  verify->add_flag("--monte-carlo", o.monte_carlo, "Include the simulation checks");
  verify->add_option("--samples", o.samples, "Monte-Carlo samples per point");
  verify->add_option("--seed", o.seed, "Seed for property and simulation checks");
  add_output_flags(verify, o);

  try {
    app.parse(argc, argv);
    if (*sweep) {
      if (o.steps < 2) throw CLI::ValidationError("--steps", "sweeps need at least two steps");
      if (!(o.min < o.max)) throw CLI::ValidationError("--min", "--min must be below --max");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bound) return run_bound(o);
    if (*fisher) return run_fisher(o);
    if (*sweep) return run_sweep(o);
    if (*reproduce) return run_reproduce(o);
    return run_verify(o);
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitNumeric;
  }
}
