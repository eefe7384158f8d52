// ewens-pitman: experiment driver for the two-parameter Poisson-Dirichlet
// partition model. Every stochastic subcommand requires --seed and writes
// outputs that are byte-identical for a fixed seed regardless of --workers.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ewp/combinatorics.hpp"
#include "ewp/errors.hpp"
#include "ewp/exact.hpp"
#include "ewp/mdp.hpp"
#include "ewp/parallel.hpp"
#include "ewp/posterior.hpp"
#include "ewp/rng.hpp"
#include "ewp/sampler.hpp"
#include "ewp/table.hpp"
#include "ewp/version.hpp"

namespace {

using ewp::Table;

struct Emission {
  std::string out_path;  // empty = stdout
  std::string format = "csv";
};

struct CommandResult {
  Table table;
  bool flagged = false;
  std::string stdout_line;  // printed before the table when not writing a file
};

std::string fmt(double v) { return ewp::format_cell(Table::Cell(v)); }

void add_emit_options(CLI::App* cmd, Emission& emission) {
  cmd->add_option("--out", emission.out_path, "Write the result table to this path");
  cmd->add_option("--format", emission.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

int finish(const CLI::App* cmd, const Emission& emission, ewp::RunManifest manifest,
           const CommandResult& result) {
  manifest.subcommand = cmd->get_name();
  manifest.version = ewp::kVersion;
  for (const auto* opt : cmd->get_options()) {
    if (opt->get_name().size() < 2 || opt->get_name() == "--help") continue;
    std::string joined;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) joined += (joined.empty() ? "" : ",") + r;
    } else {
      joined = opt->get_default_str();  // resolved default
      if (joined.empty()) continue;
    }
    manifest.parameters[opt->get_name()] = joined;
  }
  manifest.finished_at = ewp::iso8601_now();

  if (emission.out_path.empty()) {
    if (!result.stdout_line.empty()) std::cout << result.stdout_line << '\n';
    if (emission.format == "json")
      ewp::emit_json(result.table, manifest, std::cout);
    else
      ewp::emit_csv(result.table, std::cout);
  } else {
    const auto format =
        emission.format == "json" ? ewp::EmitFormat::json : ewp::EmitFormat::csv;
    const std::string digest = ewp::emit_file(result.table, manifest, format, emission.out_path);
    manifest.outputs.push_back({emission.out_path, digest});
    manifest.finished_at = ewp::iso8601_now();
    ewp::write_manifest(manifest, emission.out_path + ".manifest.json");
  }
  return result.flagged ? 3 : 0;
}

std::vector<std::int64_t> default_n_grid() { return {1000, 10000, 100000, 1000000}; }

// ---------------------------------------------------------------- sample

struct SampleArgs {
  double alpha = 0.0, theta = 1.0;
  std::vector<std::int64_t> checkpoints;
  int l_max = 3;
  std::int64_t reps = 1;
  std::uint64_t seed = 0;
  int workers = 1;
  Emission emission;
};

CommandResult run_sample(const SampleArgs& a) {
  ewp::ModelParams params{a.alpha, a.theta};
  params.validate();
  Table t;
  t.columns = {"rep", "n", "k_n"};
  for (int l = 1; l <= a.l_max; ++l) t.columns.push_back("m_" + std::to_string(l));
  const std::function<std::vector<ewp::PathPoint>(std::int64_t)> one =
      [&](std::int64_t rep) {
        ewp::RngStream rng(a.seed, std::uint64_t(rep));
        return ewp::sample_path(params, a.checkpoints, a.l_max, rng);
      };
  const auto paths = ewp::run_replicates<std::vector<ewp::PathPoint>>(a.reps, a.workers, one);
  for (std::int64_t rep = 0; rep < a.reps; ++rep) {
    for (const auto& pt : paths[rep]) {
      std::vector<Table::Cell> row{rep, pt.n, pt.k};
      for (int l = 1; l <= a.l_max; ++l) row.emplace_back(pt.m[l - 1]);
      t.add_row(std::move(row));
    }
  }
  return {std::move(t), false, ""};
}

// -------------------------------------------------------------- exact-law

CommandResult run_exact_law(double alpha, double theta, std::int64_t n, bool multiplicities) {
  ewp::ModelParams params{alpha, theta};
  Table t;
  if (multiplicities) {
    const auto law = ewp::law_multiplicities(params, n);
    t.columns = {"histogram", "k", "prob"};
    for (const auto& atom : law.atoms) {
      // "l:count" pairs for occupied sizes, e.g. "1:2 3:1" for {1,1,3}.
      std::string h;
      for (size_t l = 1; l <= atom.hist.size(); ++l)
        if (atom.hist[l - 1] > 0) {
          if (!h.empty()) h += ' ';
          h += std::to_string(l) + ":" + std::to_string(atom.hist[l - 1]);
        }
      t.add_row({h, atom.num_blocks(), atom.prob});
    }
  } else {
    const auto law = ewp::law_kn(params, n);
    t.columns = {"k", "prob", "log_prob"};
    for (std::int64_t k = 1; k <= n; ++k)
      t.add_row({k, law.prob(k), law.log_prob[k]});
  }
  return {std::move(t), false, ""};
}

// ---------------------------------------------------------------- moments

struct MomentsArgs {
  double alpha = 0.5, theta = 1.0;
  std::vector<std::int64_t> m_grid;
  int r_max = 5;
  int l = 0;  // 0 = K statistic
  std::int64_t binomial_k = -1;
  double beta_a = 0.0, beta_b = 0.0;
};

CommandResult run_moments(const MomentsArgs& a) {
  Table t;
  if (a.binomial_k >= 0) {
    const auto pm = ewp::beta_moments(a.beta_a, a.beta_b, a.r_max);
    t.columns = {"r", "moment"};
    for (int r = 0; r <= a.r_max; ++r)
      t.add_row({std::int64_t(r), ewp::binomial_moment(a.binomial_k, pm, r)});
    return {std::move(t), false, ""};
  }
  ewp::ModelParams params{a.alpha, a.theta};
  t.columns = {"m", "l", "r", "factorial_moment"};
  for (std::int64_t m : a.m_grid)
    for (int r = 1; r <= a.r_max; ++r) {
      const double v = a.l > 0 ? ewp::factorial_moment_mstar(params, m, a.l, r)
                               : ewp::factorial_moment_kstar(params, m, r);
      t.add_row({m, std::int64_t(a.l), std::int64_t(r), v});
    }
  return {std::move(t), false, ""};
}

// -------------------------------------------------------------------- mgf

struct MgfArgs {
  double alpha = 0.5, theta = 0.0;
  std::vector<std::int64_t> n_grid;
  std::vector<double> ys;
  int l = 0;
  std::string method = "series";
};

CommandResult run_mgf(const MgfArgs& a) {
  Table t;
  t.columns = {"n", "l", "y", "log_mgf", "method"};
  for (std::int64_t n : a.n_grid)
    for (double y : a.ys) {
      double v;
      if (a.method == "series") {
        if (a.theta != 0.0)
          throw ewp::ValidationError("mgf: the series method requires --theta 0");
        v = a.l > 0 ? ewp::mgf_mln_series_log(a.alpha, n, a.l, y)
                    : ewp::mgf_kn_series_log(a.alpha, n, y);
      } else {
        ewp::ModelParams params{a.alpha, a.theta};
        const double tilt = -std::log1p(-y);  // (1-y)^{-X} = exp(tilt X)
        v = a.l > 0 ? ewp::law_multiplicities(params, n).log_mgf_ml(a.l, tilt)
                    : ewp::law_kn(params, n).log_mgf(tilt);
      }
      t.add_row({n, std::int64_t(a.l), y, v, a.method});
    }
  return {std::move(t), false, ""};
}

// ------------------------------------------------------- posterior-verify

struct PosteriorVerifyArgs {
  double alpha = 0.5, theta = 1.0;
  std::int64_t n = 0, j = 0, m = 0;
  int l = 0;
  int r_max = 5;
  std::int64_t reps = 100000;
  std::uint64_t seed = 0;
};

CommandResult run_posterior_verify(const PosteriorVerifyArgs& a) {
  ewp::PosteriorContext ctx{{a.alpha, a.theta}, a.n, a.j};
  ewp::VerifyOptions opts;
  opts.r_max = a.r_max;
  opts.reps = a.reps;
  ewp::RngStream rng(a.seed, 0);
  const auto report = ewp::verify_representation(
      ctx, a.m, a.l > 0 ? std::optional<int>(a.l) : std::nullopt, opts, rng);
  Table t;
  t.columns = {"r", "closed_form", "oracle", "mc", "mc_stderr", "flag_oracle", "flag_mc"};
  for (const auto& row : report.rows)
    t.add_row({std::int64_t(row.r), row.closed_form, row.oracle, row.mc, row.mc_stderr,
               std::int64_t(row.flag_oracle), std::int64_t(row.flag_mc)});
  return {std::move(t), report.flagged(), ""};
}

// --------------------------------------------------------------- mdp-scan

struct MdpScanArgs {
  double alpha = 0.5, theta = 0.0;
  std::vector<double> schedule{1.0, 0.25, 0.0};
  std::vector<std::int64_t> n_grid;
  std::vector<double> lambdas{0.5, 1.0, 2.0};
  std::string statistic = "K";
  int l = 1;
  std::string method = "series";
  std::int64_t reps = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string grid_file;
};

CommandResult run_mdp_scan(MdpScanArgs& a) {
  if (!a.grid_file.empty()) {
    std::ifstream in(a.grid_file);
    if (!in) throw ewp::ValidationError("mdp-scan: cannot read --grid-file " + a.grid_file);
    nlohmann::json j;
    in >> j;
    if (j.contains("n_grid")) a.n_grid = j["n_grid"].get<std::vector<std::int64_t>>();
    if (j.contains("lambda_grid")) a.lambdas = j["lambda_grid"].get<std::vector<double>>();
  }
  if (a.n_grid.empty()) a.n_grid = default_n_grid();
  ewp::ModelParams params{a.alpha, a.theta};
  params.validate_positive_alpha();
  const ewp::ScaleSchedule schedule{a.schedule.at(0), a.schedule.at(1), a.schedule.at(2)};
  const auto verdict = ewp::validate_schedule(schedule, a.alpha);
  if (!verdict.valid)
    throw ewp::ValidationError("mdp-scan: schedule not in the moderate-deviation regime: " +
                               verdict.reason);
  const auto stat = a.statistic == "K" ? ewp::Statistic::K : ewp::Statistic::M;
  const auto method = a.method == "series" ? ewp::MgfMethod::series
                      : a.method == "dp"   ? ewp::MgfMethod::dp
                                           : ewp::MgfMethod::mc;

  const auto scan = ewp::run_mdp_scan(params, schedule, a.n_grid, a.lambdas, stat, a.l,
                                      method, a.reps, a.seed, a.workers);
  Table t;
  t.columns = {"n", "lambda", "beta_n", "scaled_logmgf", "method", "stderr"};
  for (const auto& entry : scan.entries)
    t.add_row({entry.n, entry.lambda, entry.beta_n, entry.value,
               std::string(ewp::method_name(entry.method)),
               entry.mc_stderr ? Table::Cell(*entry.mc_stderr) : Table::Cell(std::string())});
  // Deterministic methods must approach the limiting log-MGF along the grid.
  bool flagged = false;
  if (method != ewp::MgfMethod::mc) {
    size_t idx = 0;
    for (double lambda : a.lambdas) {
      const double limit = stat == ewp::Statistic::K
                               ? ewp::limit_logmgf_k(a.alpha, lambda)
                               : ewp::limit_logmgf_m(a.alpha, a.l, lambda);
      double prev_dev = 0.0;
      for (size_t i = 0; i < a.n_grid.size(); ++i, ++idx) {
        const double dev = std::abs(scan.entries[idx].value - limit);
        if (i > 0 && dev >= prev_dev) flagged = true;
        prev_dev = dev;
      }
    }
  }
  return {std::move(t), flagged, ""};
}

// ------------------------------------------------------------------- rate

struct RateArgs {
  double alpha = 0.5;
  double x = 1.0;
  std::string mode = "K";
  int l = 1;
};

CommandResult run_rate(const RateArgs& a) {
  const bool k_mode = a.mode == "K";
  const double rate = k_mode ? ewp::rate_k(a.alpha, a.x) : ewp::rate_m(a.alpha, a.l, a.x);
  const double leg =
      ewp::legendre_rate(a.alpha, k_mode ? std::nullopt : std::optional<int>(a.l), a.x);
  Table t;
  t.columns = {"alpha", "x", "mode", "l", "rate", "legendre", "entropy_h", "entropy_value",
               "critical_alpha"};
  std::vector<Table::Cell> row{a.alpha, a.x, a.mode, std::int64_t(k_mode ? 0 : a.l), rate, leg};
  if (k_mode) {
    const auto ef = ewp::entropy_form(a.alpha, a.x);
    row.emplace_back(ef.h_alpha);
    row.emplace_back(ef.value);
  } else {
    row.emplace_back(std::string());
    row.emplace_back(std::string());
  }
  if (k_mode && a.x > 1.0)
    row.emplace_back(ewp::critical_alpha(a.x));
  else
    row.emplace_back(std::string());
  t.add_row(std::move(row));
  return {std::move(t), false, fmt(rate)};
}

// ----------------------------------------------------------------- limits

struct LimitsArgs {
  std::string mode = "ratio";
  double alpha = 0.5, theta = 1.0;
  std::int64_t n = 100000;
  int l_max = 2;
  std::int64_t reps = 100;
  std::uint64_t seed = 0;
  int workers = 1;
};

CommandResult run_limits(const LimitsArgs& a) {
  Table t;
  if (a.mode == "clt") {
    const auto rep = ewp::clt_diagnostic(a.theta, a.n, a.reps, a.seed, a.workers);
    t.columns = {"n",         "reps",      "empirical_mean", "exact_mean", "mean_z",
                 "empirical_var", "exact_var", "var_z",          "skewness",   "flagged"};
    t.add_row({rep.n, rep.reps, rep.empirical_mean, rep.exact_mean, rep.mean_z,
               rep.empirical_var, rep.exact_var, rep.var_z, rep.skewness,
               std::int64_t(rep.flagged)});
    return {std::move(t), rep.flagged, ""};
  }
  ewp::ModelParams params{a.alpha, a.theta};
  const auto rep = ewp::limit_ratio_diagnostic(params, a.n, a.l_max, a.reps, a.seed, a.workers);
  t.columns = {"quantity", "l", "mean", "stderr", "reference", "z"};
  t.add_row({std::string("k_over_n_alpha"), std::int64_t(0), rep.k_ratio_mean, rep.k_ratio_se,
             rep.k_ratio_exact ? Table::Cell(*rep.k_ratio_exact) : Table::Cell(std::string()),
             rep.k_ratio_z ? Table::Cell(*rep.k_ratio_z) : Table::Cell(std::string())});
  bool flagged = rep.k_ratio_z && *rep.k_ratio_z > 4.0;
  for (const auto& row : rep.per_l)
    t.add_row({std::string("m_l_over_k"), std::int64_t(row.l), row.ratio_mean, row.ratio_se,
               row.limit, std::string()});
  return {std::move(t), flagged, ""};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ewens-Pitman two-parameter Poisson-Dirichlet partition toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ewp::kVersion);

  // --- sample
  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample",
      "Sample CRP trajectories; CSV columns: rep,n,k_n,m_1..m_l");
  sample->add_option("--alpha", sample_args.alpha, "alpha in [0,1)")->required();
  sample->add_option("--theta", sample_args.theta, "theta > -alpha")->required();
  sample->add_option("--n-grid", sample_args.checkpoints, "Checkpoint sample sizes (increasing)")
      ->delimiter(',');
  sample->add_option("--n", sample_args.checkpoints, "Single checkpoint size");
  sample->add_option("--l", sample_args.l_max, "Track M_1..M_l")->capture_default_str();
  sample->add_option("--reps", sample_args.reps, "Replicates")->capture_default_str();
  sample->add_option("--seed", sample_args.seed, "Master seed")->required();
  sample->add_option("--workers", sample_args.workers, "Worker threads")->capture_default_str();
  add_emit_options(sample, sample_args.emission);

  // --- exact-law
  double el_alpha = 0.0, el_theta = 1.0;
  std::int64_t el_n = 1;
  bool el_mult = false;
  Emission el_emission;
  auto* exact_law = app.add_subcommand("exact-law",
      "Exact law of K_n (columns: k,prob,log_prob) or, with --multiplicities,\n"
      "the joint histogram law (columns: histogram,k,prob)");
  exact_law->add_option("--alpha", el_alpha)->required();
  exact_law->add_option("--theta", el_theta)->required();
  exact_law->add_option("--n", el_n)->required();
  exact_law->add_flag("--multiplicities", el_mult, "Joint histogram law (n <= 14)");
  add_emit_options(exact_law, el_emission);

  // --- moments
  MomentsArgs mom_args;
  Emission mom_emission;
  auto* moments = app.add_subcommand("moments",
      "Closed-form factorial moments (columns: m,l,r,factorial_moment) or\n"
      "Binomial-Beta moments with --binomial-k (columns: r,moment)");
  moments->add_option("--alpha", mom_args.alpha)->capture_default_str();
  moments->add_option("--theta", mom_args.theta, "theta' > 0 of PD(alpha, theta')")
      ->capture_default_str();
  moments->add_option("--m", mom_args.m_grid, "Additional sample sizes")->delimiter(',');
  moments->add_option("--r-max", mom_args.r_max)->capture_default_str();
  moments->add_option("--l", mom_args.l, "Frequency statistic M_l (0 = K)")->capture_default_str();
  moments->add_option("--binomial-k", mom_args.binomial_k,
                      "Fixed Binomial count; emits E[Z^r] with p ~ Beta(--beta-a, --beta-b)");
  moments->add_option("--beta-a", mom_args.beta_a);
  moments->add_option("--beta-b", mom_args.beta_b);
  add_emit_options(moments, mom_emission);

  // --- mgf
  MgfArgs mgf_args;
  Emission mgf_emission;
  auto* mgf = app.add_subcommand("mgf",
      "E[(1-y)^{-K_n}] / E[(1-y)^{-M_{l,n}}] by series or DP; columns:\n"
      "n,l,y,log_mgf,method");
  mgf->add_option("--alpha", mgf_args.alpha)->required();
  mgf->add_option("--theta", mgf_args.theta, "DP method only; series requires 0")
      ->capture_default_str();
  mgf->add_option("--n", mgf_args.n_grid, "Sample sizes")->delimiter(',')->required();
  mgf->add_option("--y", mgf_args.ys, "y values in (0,1)")->delimiter(',')->required();
  mgf->add_option("--l", mgf_args.l, "Statistic M_l (0 = K)")->capture_default_str();
  mgf->add_option("--method", mgf_args.method)->check(CLI::IsMember({"series", "dp"}))
      ->capture_default_str();
  add_emit_options(mgf, mgf_emission);

  // --- posterior-verify
  PosteriorVerifyArgs pv_args;
  Emission pv_emission;
  auto* pv = app.add_subcommand("posterior-verify",
                                "Three-way check of the Binomial-Beta posterior representation;\n"
                                "columns: r,closed_form,oracle,mc,mc_stderr,flag_oracle,flag_mc");
  pv->add_option("--alpha", pv_args.alpha)->required();
  pv->add_option("--theta", pv_args.theta)->required();
  pv->add_option("--n", pv_args.n)->required();
  pv->add_option("--j", pv_args.j)->required();
  pv->add_option("--m", pv_args.m)->required();
  pv->add_option("--l", pv_args.l, "Statistic M_l (0 = K)")->capture_default_str();
  pv->add_option("--r-max", pv_args.r_max)->capture_default_str();
  pv->add_option("--reps", pv_args.reps)->capture_default_str();
  pv->add_option("--seed", pv_args.seed)->required();
  add_emit_options(pv, pv_emission);

  // --- mdp-scan
  MdpScanArgs scan_args;
  Emission scan_emission;
  auto* scan = app.add_subcommand("mdp-scan",
      "Finite-n scaled log-MGF grids; columns:\n"
      "n,lambda,beta_n,scaled_logmgf,method,stderr");
  scan->add_option("--alpha", scan_args.alpha)->required();
  scan->add_option("--theta", scan_args.theta)->capture_default_str();
  scan->add_option("--schedule", scan_args.schedule, "beta_n = c*n^p*(ln n)^q as c,p,q")
      ->delimiter(',')->expected(3);
  scan->add_option("--n-grid", scan_args.n_grid, "Sample sizes (default 1e3..1e6)")
      ->delimiter(',');
  scan->add_option("--lambda", scan_args.lambdas, "Tilt values")->delimiter(',');
  scan->add_option("--statistic", scan_args.statistic)->check(CLI::IsMember({"K", "M"}))
      ->capture_default_str();
  scan->add_option("--l", scan_args.l)->capture_default_str();
  scan->add_option("--method", scan_args.method)
      ->check(CLI::IsMember({"series", "dp", "mc"}))->capture_default_str();
  scan->add_option("--reps", scan_args.reps, "Replicates (mc only)")->capture_default_str();
  scan->add_option("--seed", scan_args.seed, "Master seed (mc only)");
  scan->add_option("--workers", scan_args.workers)->capture_default_str();
  scan->add_option("--grid-file", scan_args.grid_file, "JSON {n_grid, lambda_grid}");
  add_emit_options(scan, scan_emission);

  // --- rate
  RateArgs rate_args;
  Emission rate_emission;
  auto* rate = app.add_subcommand("rate",
      "Rate functions; prints the rate value, table columns:\n"
      "alpha,x,mode,l,rate,legendre,entropy_h,entropy_value,critical_alpha");
  rate->add_option("--alpha", rate_args.alpha)->required();
  rate->add_option("--x", rate_args.x)->required();
  rate->add_option("--mode", rate_args.mode)->check(CLI::IsMember({"K", "M"}))
      ->capture_default_str();
  rate->add_option("--l", rate_args.l)->capture_default_str();
  add_emit_options(rate, rate_emission);

  // --- limits
  LimitsArgs lim_args;
  Emission lim_emission;
  auto* limits = app.add_subcommand("limits",
      "Almost-sure ratio diagnostics (columns: quantity,l,mean,stderr,reference,z)\n"
      "or --mode clt (columns: n,reps,empirical_mean,exact_mean,mean_z,\n"
      "empirical_var,exact_var,var_z,skewness,flagged)");
  limits->add_option("--mode", lim_args.mode)->check(CLI::IsMember({"ratio", "clt"}))
      ->capture_default_str();
  limits->add_option("--alpha", lim_args.alpha)->capture_default_str();
  limits->add_option("--theta", lim_args.theta)->capture_default_str();
  limits->add_option("--n", lim_args.n)->capture_default_str();
  limits->add_option("--l-max", lim_args.l_max)->capture_default_str();
  limits->add_option("--reps", lim_args.reps)->capture_default_str();
  limits->add_option("--seed", lim_args.seed)->required();
  limits->add_option("--workers", lim_args.workers)->capture_default_str();
  add_emit_options(limits, lim_emission);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 1;
  }

  ewp::RunManifest manifest;
  manifest.started_at = ewp::iso8601_now();

  try {
    if (*sample) {
      manifest.master_seed = sample_args.seed;
      manifest.seeded = true;
      if (sample_args.checkpoints.empty())
        throw ewp::ValidationError("sample: provide --n or --n-grid");
      return finish(sample, sample_args.emission, manifest, run_sample(sample_args));
    }
    if (*exact_law)
      return finish(exact_law, el_emission, manifest,
                    run_exact_law(el_alpha, el_theta, el_n, el_mult));
    if (*moments) {
      if (mom_args.binomial_k < 0 && mom_args.m_grid.empty())
        throw ewp::ValidationError("moments: provide --m or --binomial-k");
      return finish(moments, mom_emission, manifest, run_moments(mom_args));
    }
    if (*mgf) return finish(mgf, mgf_emission, manifest, run_mgf(mgf_args));
    if (*pv) {
      manifest.master_seed = pv_args.seed;
      manifest.seeded = true;
      return finish(pv, pv_emission, manifest, run_posterior_verify(pv_args));
    }
    if (*scan) {
      if (scan_args.method == "mc") {
        if (scan->count("--seed") == 0)
          throw ewp::ValidationError("mdp-scan: --seed is required with --method mc");
        manifest.master_seed = scan_args.seed;
        manifest.seeded = true;
      }
      return finish(scan, scan_emission, manifest, run_mdp_scan(scan_args));
    }
    if (*rate) return finish(rate, rate_emission, manifest, run_rate(rate_args));
    if (*limits) {
      manifest.master_seed = lim_args.seed;
      manifest.seeded = true;
      return finish(limits, lim_emission, manifest, run_limits(lim_args));
    }
  } catch (const ewp::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ewp::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
