// rl_haar_lab: command-line front end for the Haar-expansion laboratory.
//
// Subcommands:
//   covariance-check  exact vs. finite Parseval covariance, CSV report
//   tail-error        Monte Carlo sup-norm tail errors over a cut sweep, CSV
//   rate-fit          log-log-log rate regression of a tail-error CSV, JSON
//   lower-bound       separated-sequence / Sudakov / MC pipeline, JSON
//   lemma1-audit      harmonic-sum ratio audit over point configurations, CSV
//
// Exit codes: 0 success, 1 configuration or input error, 2 tolerance or
// structural-guarantee violation.  Outputs are written atomically and are
// byte-identical for identical configurations at any --workers value.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlhaar/basis.hpp"
#include "rlhaar/covariance.hpp"
#include "rlhaar/io.hpp"
#include "rlhaar/lower_bound.hpp"
#include "rlhaar/params.hpp"
#include "rlhaar/plan.hpp"
#include "rlhaar/process_sim.hpp"
#include "rlhaar/rate_analysis.hpp"

#include <random>

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5EED0001ULL;

using ordered_json = nlohmann::ordered_json;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    rlhaar::io::write_text_atomic(out_path, content);
  }
}

// "natural" | "reversed-levels" | "random:<seed>" | "file:<path>" (or a bare
// path to an existing file).
rlhaar::TruncationPlan make_plan(const std::string& spec, int max_level) {
  if (spec == "natural") return rlhaar::TruncationPlan::natural(max_level);
  if (spec == "reversed-levels") return rlhaar::TruncationPlan::reversed_levels(max_level);
  if (spec.rfind("random:", 0) == 0) {
    const std::uint64_t seed = std::stoull(spec.substr(7));
    return rlhaar::TruncationPlan::random(max_level, seed);
  }
  const std::string path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
  rlhaar::TruncationPlan plan = rlhaar::TruncationPlan::from_file(path);
  if (plan.max_level() != max_level) {
    throw std::invalid_argument("plan file max level " + std::to_string(plan.max_level()) +
                                " does not match --max-level " + std::to_string(max_level));
  }
  return plan;
}

std::vector<std::int64_t> default_cuts(int max_level) {
  std::vector<std::int64_t> cuts;
  for (int e = 6; e < max_level; ++e) cuts.push_back(std::int64_t{1} << e);
  if (cuts.empty()) cuts.push_back(1);
  return cuts;
}

int cmd_covariance_check(double alpha, int max_level, double tolerance,
                         const std::string& out_path) {
  const rlhaar::RLParams params = rlhaar::RLParams::make(alpha);
  const std::vector<double> knots{0.0, 0.25, 0.5, 0.75, 1.0};
  std::string csv = "s,t,exact,partial,deficit\n";
  bool violated = false;
  for (std::size_t a = 0; a < knots.size(); ++a) {
    for (std::size_t b = a; b < knots.size(); ++b) {
      const double s = knots[a];
      const double t = knots[b];
      const double exact = rlhaar::exact_covariance(params, s, t);
      const double partial = rlhaar::basis_covariance(params, s, t, max_level);
      const double deficit = exact - partial;
      if (std::abs(deficit) > tolerance) violated = true;
      csv += rlhaar::io::format_double(s) + "," + rlhaar::io::format_double(t) + "," +
             rlhaar::io::format_double(exact) + "," + rlhaar::io::format_double(partial) + "," +
             rlhaar::io::format_double(deficit) + "\n";
    }
  }
  emit(out_path, csv);
  return violated ? 2 : 0;
}

int cmd_tail_error(double alpha, int max_level, int grid_level, std::int64_t replicas,
                   std::uint64_t seed, const std::string& plan_spec,
                   std::vector<std::int64_t> cuts, int workers, const std::string& out_path) {
  const rlhaar::RLParams params = rlhaar::RLParams::make(alpha);
  const rlhaar::TruncationPlan plan = make_plan(plan_spec, max_level);
  if (cuts.empty()) cuts = default_cuts(max_level);
  const rlhaar::ProcessSimulator sim(params, max_level, grid_level);
  const rlhaar::TailCurve curve = sim.mc_tail_curve(plan, cuts, replicas, seed, workers);

  rlhaar::RateCurve out;
  out.alpha = alpha;
  out.plan_description = plan_spec;
  out.grid_level = grid_level;
  out.max_level = max_level;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    out.rows.push_back({cuts[i], curve.estimates[i]});
  }
  emit(out_path, rlhaar::io::tail_curve_csv(out));
  return 0;
}

int cmd_rate_fit(const std::string& input, double alpha, double fix_power,
                 const std::string& out_path) {
  const rlhaar::RLParams params = rlhaar::RLParams::make(alpha);
  rlhaar::RateCurve curve;
  try {
    curve = rlhaar::io::parse_tail_curve_csv(rlhaar::io::read_text(input));
  } catch (const std::exception& e) {
    std::cerr << "rate-fit: " << e.what() << "\n";
    return 1;
  }
  curve.alpha = alpha;
  const rlhaar::RateFit fit = rlhaar::fit_log_rate(curve, fix_power);
  const double restricted = rlhaar::restricted_residual_norm(curve, fix_power, 0.5);
  const auto ratios = rlhaar::gap_ratio(curve, params);
  std::vector<double> ratio_values;
  for (const auto& [n, r] : ratios) ratio_values.push_back(r);
  const rlhaar::SpearmanResult trend = rlhaar::spearman_trend(ratio_values);

  ordered_json report;
  report["schema_version"] = "1";
  report["alpha"] = alpha;
  report["fix_power"] = fix_power;
  report["n_rows"] = curve.rows.size();
  report["log_c"] = fit.log_c;
  report["c"] = fit.c;
  report["beta"] = fit.beta;
  report["beta_std_error"] = fit.beta_std_error;
  report["log_c_std_error"] = fit.log_c_std_error;
  report["residual_norm"] = fit.residual_norm;
  report["residual_norm_beta_05"] = restricted;
  report["beta_05_rejected"] = std::abs(fit.beta - 0.5) > 3.0 * fit.beta_std_error;
  ordered_json gaps = ordered_json::array();
  for (const auto& [n, r] : ratios) gaps.push_back({{"n", n}, {"ratio", r}});
  report["gap_ratio"] = gaps;
  report["spearman_rho"] = trend.rho;
  report["spearman_p"] = trend.p_one_sided;
  emit(out_path, report.dump(2) + "\n");
  return 0;
}

int cmd_lower_bound(int level, std::uint64_t seed, const std::string& plan_spec,
                    std::int64_t replicas, double c_sud, int grid_level, int workers,
                    const std::string& out_path) {
  if (level % 2 != 0 || level < 2) {
    std::cerr << "lower-bound: --max-level must be an even level >= 2\n";
    return 1;
  }
  const rlhaar::TruncationPlan plan = make_plan(plan_spec, level);
  const std::int64_t cut = std::int64_t{1} << (level - 1);
  const rlhaar::ShiftSet K = rlhaar::tail_level_set(plan, level, cut);
  const rlhaar::BlockSelection blocks = rlhaar::select_dense_blocks(K);
  const rlhaar::SeparatedSequence seq = rlhaar::construct_separated_sequence(K);
  const double min_score = rlhaar::check_separation(K, seq.points);
  const int ppu = 1 << grid_level;
  const rlhaar::McEstimate mc = rlhaar::mc_sup_xk(K, ppu, replicas, seed, workers);
  const double sudakov =
      seq.size() >= 2 ? rlhaar::sudakov_bound(K, seq.points, c_sud) : 0.0;

  // Theorem-backed structural guarantees; a failure here is an
  // implementation bug, not randomness.
  const std::int64_t half_level = std::int64_t{1} << (level - 1);
  const std::int64_t block_count = std::int64_t{1} << (level / 2);
  const bool k_ok = K.size() >= half_level;
  const bool blocks_ok = 3 * static_cast<std::int64_t>(blocks.selected.size()) >= block_count;
  const bool m_ok = seq.degenerate || seq.size() >= (block_count >> 2);

  ordered_json report;
  report["schema_version"] = "1";
  report["level"] = level;
  report["cut"] = cut;
  report["plan"] = plan_spec;
  report["seed"] = seed;
  report["replicas"] = replicas;
  report["c_sud"] = c_sud;
  report["points_per_unit"] = ppu;
  report["k_size"] = K.size();
  report["blocks_selected"] = blocks.selected.size();
  report["m"] = seq.size();
  report["degenerate"] = seq.degenerate;
  if (std::isfinite(min_score)) {
    report["min_score"] = min_score;
    report["score_over_level"] = min_score / static_cast<double>(level);
  } else {
    report["min_score"] = nullptr;  // fewer than two points: no constraint
    report["score_over_level"] = nullptr;
  }
  report["sudakov_bound"] = sudakov;
  report["mc_sup_mean"] = mc.mean;
  report["mc_sup_std_error"] = mc.std_error;
  report["guarantees_ok"] = k_ok && blocks_ok && m_ok;
  emit(out_path, report.dump(2) + "\n");
  return (k_ok && blocks_ok && m_ok) ? 0 : 2;
}

int cmd_lemma1_audit(std::int64_t trials, std::int64_t q_max, std::uint64_t seed,
                     const std::string& out_path) {
  if (q_max < 2 || trials < 1) {
    std::cerr << "lemma1-audit: need --q-max >= 2 and --trials >= 1\n";
    return 1;
  }
  std::mt19937_64 rng(seed);
  std::string csv = "q,class,min_ratio\n";
  bool all_positive = true;
  for (std::int64_t q = 2; q <= q_max; q *= 2) {
    const std::int64_t n = 2 * q;
    {  // equally spaced: closed-form harmonic configuration
      std::vector<double> pts(n);
      for (std::int64_t i = 0; i < n; ++i) pts[i] = static_cast<double>(i);
      const double ratio = rlhaar::lemma1_ratio(pts, static_cast<double>(n - 1));
      csv += std::to_string(q) + ",equally_spaced," + rlhaar::io::format_double(ratio) + "\n";
      if (!(ratio > 0.0)) all_positive = false;
    }
    {
      double min_ratio = std::numeric_limits<double>::infinity();
      std::vector<double> pts(n);
      for (std::int64_t t = 0; t < trials; ++t) {
        for (auto& p : pts) {
          p = static_cast<double>(rng()) / static_cast<double>(std::mt19937_64::max());
        }
        std::sort(pts.begin(), pts.end());
        min_ratio = std::min(min_ratio, rlhaar::lemma1_ratio(pts, 1.0));
      }
      csv += std::to_string(q) + ",random_uniform," + rlhaar::io::format_double(min_ratio) + "\n";
      if (!(min_ratio > 0.0)) all_positive = false;
    }
  }
  emit(out_path, csv);
  return all_positive ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Haar series representations of the "
               "Riemann-Liouville process"};
  app.require_subcommand(1);

  double alpha = 1.5;
  int max_level = 12;
  int grid_level = 0;  // 0 -> max_level + 3
  std::int64_t replicas = 2000;
  std::uint64_t seed = kDefaultSeed;
  std::string plan_spec = "natural";
  std::string out_path;
  std::string input_path;
  std::vector<std::int64_t> cuts;
  double tolerance = 1e-3;
  double c_sud = 0.2;
  double fix_power = std::numeric_limits<double>::quiet_NaN();
  int workers = 0;

  auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--out", out_path, "Output file (stdout when omitted)");
    if (with_seed) {
      sub->add_option("--seed", seed, "Master seed")->envname("RLHAAR_SEED");
      sub->add_option("--workers", workers, "Worker threads (0 = hardware)");
    }
  };

  CLI::App* cov = app.add_subcommand("covariance-check",
                                     "Exact vs. Parseval-partial covariance check");
  cov->add_option("--alpha", alpha, "Process order (> 1/2)");
  cov->add_option("--max-level", max_level, "Highest Haar level J in the partial sum");
  cov->add_option("--tolerance", tolerance, "Maximum allowed |deficit|");
  add_common(cov, false);

  CLI::App* tail = app.add_subcommand("tail-error", "Monte Carlo tail sup-norm sweep");
  tail->add_option("--alpha", alpha, "Process order (> 1/2)");
  tail->add_option("--max-level", max_level, "Highest Haar level J of the plan");
  tail->add_option("--grid-level", grid_level, "Dyadic grid level (default J + 3)");
  tail->add_option("--replicas", replicas, "Monte Carlo replicas");
  tail->add_option("--plan", plan_spec,
                   "natural | reversed-levels | random:<seed> | <plan file>");
  tail->add_option("--cuts", cuts, "Cut positions (default powers of two 2^6..2^{J-1})")
      ->delimiter(',');
  add_common(tail, true);

  CLI::App* fitc = app.add_subcommand("rate-fit", "Fit log e_n = log C + a log n + b log log n");
  fitc->add_option("--input", input_path, "tail-error CSV")->required();
  fitc->add_option("--alpha", alpha, "Process order used for the optimal-rate comparison");
  fitc->add_option("--fix-power", fix_power, "Fixed power a (default -(alpha - 1/2))");
  add_common(fitc, false);

  CLI::App* lower = app.add_subcommand("lower-bound",
                                       "Separated-sequence construction and Sudakov check");
  lower->add_option("--max-level", max_level, "Even level j of the construction");
  lower->add_option("--plan", plan_spec,
                    "natural | reversed-levels | random:<seed> | <plan file>");
  lower->add_option("--replicas", replicas, "Monte Carlo replicas");
  lower->add_option("--c-sud", c_sud, "Sudakov constant");
  lower->add_option("--grid-level", grid_level, "log2(grid points per unit), default 3");
  add_common(lower, true);

  std::int64_t trials = 2000;
  std::int64_t q_max = 64;
  CLI::App* lemma = app.add_subcommand("lemma1-audit", "Harmonic-sum ratio audit");
  lemma->add_option("--trials", trials, "Random configurations per q");
  lemma->add_option("--q-max", q_max, "Largest q (doubling from 2)");
  lemma->add_option("--seed", seed, "Audit RNG seed")->envname("RLHAAR_SEED");
  add_common(lemma, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (cov->parsed()) {
      return cmd_covariance_check(alpha, max_level, tolerance, out_path);
    }
    if (tail->parsed()) {
      if (grid_level == 0) grid_level = max_level + 3;
      return cmd_tail_error(alpha, max_level, grid_level, replicas, seed, plan_spec, cuts,
                            workers, out_path);
    }
    if (fitc->parsed()) {
      if (std::isnan(fix_power)) fix_power = -(alpha - 0.5);
      return cmd_rate_fit(input_path, alpha, fix_power, out_path);
    }
    if (lower->parsed()) {
      if (grid_level == 0) grid_level = 3;
      return cmd_lower_bound(max_level, seed, plan_spec, replicas, c_sud, grid_level, workers,
                             out_path);
    }
    if (lemma->parsed()) {
      return cmd_lemma1_audit(trials, q_max, seed, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "rl_haar_lab: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
