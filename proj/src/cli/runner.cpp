#include "bilmax/cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "bilmax/experiments.hpp"
#include "bilmax/norms.hpp"
#include "bilmax/parallel.hpp"
#include "bilmax/raw_field.hpp"
#include "bilmax/wavelet_analysis.hpp"
#include "bilmax/wavelet_system.hpp"

namespace bilmax::cli {

namespace {

constexpr double pi = std::numbers::pi;

Verdict at_most(std::string name, double value, double threshold) {
  return {std::move(name), value <= threshold, value, threshold, "<="};
}

Verdict below(std::string name, double value, double threshold) {
  return {std::move(name), value < threshold, value, threshold, "<"};
}

Verdict above(std::string name, double value, double threshold) {
  return {std::move(name), value > threshold, value, threshold, ">"};
}

Verdict from_fit(std::string name, const DecayFitReport& fit) {
  return {std::move(name), fit.verdict, fit.slope, fit.bound + (fit.check == SlopeCheck::at_most ? fit.tolerance : 0.0),
          fit.check == SlopeCheck::at_most ? "<=" : "within"};
}

Json fit_json(const DecayFitReport& fit) {
  return {{"axis", fit.axis},
          {"x", fit.x},
          {"log2_values", fit.log2_values},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"residual_rms", fit.residual_rms},
          {"bound", fit.bound},
          {"tolerance", fit.tolerance},
          {"check", fit.check == SlopeCheck::at_most ? "at_most" : "within"},
          {"verdict", fit.verdict}};
}

Json stats_json(const RatioStatistics& s) {
  return {{"ratios", s.ratios}, {"max", s.max}, {"mean", s.mean}, {"median", s.median}, {"q90", s.q90}};
}

bool enabled(double tolerance) { return !std::isnan(tolerance); }

TrialEnsemble make_ensemble(const EnsembleSpec& spec, const Grid& grid, std::uint64_t suite_seed) {
  TrialEnsemble ens;
  ens.seed = spec.seed.value_or(suite_seed);
  ens.count = spec.count;
  ens.grid = grid;
  ens.band_f = spec.band_f;
  ens.band_g = spec.band_g;
  ens.packets = spec.packets;
  ens.spread = spec.spread;
  return ens;
}

Lattice analysis_lattice(const Symbol& m, const WaveletSpec& w, const GridSpec& fallback) {
  const int p = w.spacing_exponent.value_or(w.gamma_max + 2);
  const double radius = m.support().bounded() ? m.support().outer : fallback.extent / 2.0;
  return Lattice::covering(m.freq_dim(), radius, p);
}

void run_decompose(const ExperimentConfig& c, const std::string& out_dir, ExperimentOutcome& o) {
  const Symbol m = c.symbol->build_piece().symbol;
  const WaveletSystem sys = build_wavelet_system(c.wavelet->k);
  const CoeffTree tree = analyze(m, sys, c.wavelet->gamma_max, analysis_lattice(m, *c.wavelet, *c.grid));
  const Grid grid = Grid::make(m.freq_dim(), c.grid->points, c.grid->extent);
  const Field rec = reconstruct(tree, sys, grid);
  const Field ref = m.sample(grid);
  const double ref_norm = lp_norm(ref, 2.0);
  const double rel = ref_norm > 0.0 ? lp_norm(rec - ref, 2.0) / ref_norm : lp_norm(rec, 2.0);

  const int gmax = c.wavelet->gamma_max;
  std::vector<std::size_t> counts(static_cast<std::size_t>(gmax + 1), 0);
  for (const auto& [idx, value] : tree.entries()) ++counts[static_cast<std::size_t>(idx.gamma)];
  const std::vector<double> sup_w = sup_by_level(tree, gmax, true);
  const std::vector<double> sup_all = sup_by_level(tree, gmax, false);
  o.samples.header = {"gamma", "count", "sup_wavelet", "sup_all"};
  for (int g = 0; g <= gmax; ++g) {
    const auto i = static_cast<std::size_t>(g);
    o.samples.rows.push_back({double(g), double(counts[i]), sup_w[i], sup_all[i]});
  }
  o.results = {{"symbol", m.name()},
               {"coefficients", tree.size()},
               {"energy", tree.energy()},
               {"symbol_l2_squared", ref_norm * ref_norm},
               {"relative_l2_error", rel},
               {"count_by_level", counts},
               {"sup_by_level", sup_w}};
  if (enabled(c.tolerances.at("reconstruction")))
    o.verdicts.push_back(below("reconstruction", rel, c.tolerances.at("reconstruction")));
  if (c.dump_fields) {
    write_raw_field(out_dir + "/" + c.name + ".symbol.bin", ref, false);
    write_raw_field(out_dir + "/" + c.name + ".reconstruction.bin", rec, false);
    std::ofstream os(out_dir + "/" + c.name + ".coeffs");
    tree.write(os);
  }
}

void run_wavelet_decay(const ExperimentConfig& c, ExperimentOutcome& o) {
  const WaveletSystem sys = build_wavelet_system(c.wavelet->k);
  const int gmax = c.wavelet->gamma_max;
  const int n = c.symbol->n;
  if (!c.pieces) {
    const Symbol m = c.symbol->build_piece().symbol;
    if (!m.support().bounded()) throw ConfigError("wavelet-decay needs a compactly supported symbol");
    const CoeffTree tree = analyze(m, sys, gmax, analysis_lattice(m, *c.wavelet, GridSpec{}));
    const std::vector<double> sup = sup_by_level(tree, gmax, true);
    std::vector<double> x;
    o.samples.header = {"gamma", "sup_wavelet"};
    for (int g = 0; g <= gmax; ++g) {
      x.push_back(g);
      o.samples.rows.push_back({double(g), sup[static_cast<std::size_t>(g)]});
    }
    const double bound = enabled(c.params.at("bound")) ? c.params.at("bound") : -(c.wavelet->k + n);
    const double tol = enabled(c.tolerances.at("slope")) ? c.tolerances.at("slope") : 0.5;
    const DecayFitReport fit = fit_log2_slope("gamma", x, sup, bound, tol);
    o.results = {{"symbol", m.name()}, {"coefficients", tree.size()}, {"gamma_fit", fit_json(fit)}};
    o.verdicts.push_back(from_fit("gamma_slope", fit));
    return;
  }
  const PiecesSpec& ps = *c.pieces;
  const double lambda = c.symbol->lambda;
  std::vector<CoeffTree> trees;
  for (int j = ps.j_lo; j <= ps.j_hi; ++j) {
    const AnnularPiece piece = bochner_riesz_piece(n, lambda, j, true);
    CoeffTree t = analyze(piece, sys, gmax, c.wavelet->spacing_exponent.value_or(gmax + 2));
    t.set_j(j);
    trees.push_back(std::move(t));
  }
  const double tol = enabled(c.tolerances.at("slope")) ? c.tolerances.at("slope") : 0.3;
  const CoeffDecayProfile prof = coeff_decay_profile(trees, ps.r, ps.s, n, lambda, gmax, tol);
  Json predicted = Json::array();
  o.samples.header = {"j", "gamma", "sup_wavelet", "predicted_C"};
  for (std::size_t a = 0; a < prof.js.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < prof.gammas.size(); ++b) {
      const double pc = predicted_bound_C(prof.js[a], prof.gammas[b], lambda, ps.r, ps.s, n);
      row.push_back(pc);
      o.samples.rows.push_back({double(prof.js[a]), double(prof.gammas[b]), prof.sup[a][b], pc});
    }
    predicted.push_back(row);
  }
  Json per_j = Json::array(), per_gamma = Json::array();
  for (const auto& f : prof.gamma_slopes_at_j) per_j.push_back(fit_json(f));
  for (const auto& f : prof.j_slopes_at_gamma) per_gamma.push_back(fit_json(f));
  o.results = {{"js", prof.js},
               {"gammas", prof.gammas},
               {"sup", prof.sup},
               {"j_fit", fit_json(prof.j_fit)},
               {"gamma_fit", fit_json(prof.gamma_fit)},
               {"gamma_slopes_at_j", per_j},
               {"j_slopes_at_gamma", per_gamma},
               {"predicted_C", predicted}};
  o.verdicts.push_back(from_fit("j_slope", prof.j_fit));
  o.verdicts.push_back(from_fit("gamma_slope", prof.gamma_fit));
}

void run_maximal(const ExperimentConfig& c, std::uint64_t seed, const std::string& out_dir,
                 ExperimentOutcome& o) {
  const Symbol m = c.symbol->build_piece().symbol;
  const Grid grid = Grid::make(c.symbol->n, c.grid->points, c.grid->extent);
  const TrialEnsemble ens = make_ensemble(*c.ensemble, grid, seed);
  const DilationGrid tg = DilationGrid::per_octave(*c.dilation->t_min, *c.dilation->t_max, c.dilation->per_octave);
  const bool identity = c.symbol->family == "identity" && !c.symbol->piece;
  std::vector<double> ratios, id_err, consts;
  o.samples.header = {"trial", "l1_ratio", "identity_error", "majorization_constant"};
  for (std::size_t i = 0; i < ens.count; ++i) {
    const auto [f, g] = ens.draw(i);
    const BilinearResult res = maximal_operator(m, f, g, tg);
    for (const auto& w : res.diagnostics.warnings)
      if (std::find(o.warnings.begin(), o.warnings.end(), w) == o.warnings.end()) o.warnings.push_back(w);
    ratios.push_back(lp_norm(res.maximal, 1.0));
    const Field fg = abs(hadamard(f, g));
    id_err.push_back(max_abs(res.maximal - fg) / max_abs(fg));
    consts.push_back(
        majorization_constant(res.maximal, hl_maximal(f), hl_maximal(g), c.params.at("majorization_floor")).constant);
    o.samples.rows.push_back({double(i), ratios.back(), id_err.back(), consts.back()});
    if (c.dump_fields && i == 0) write_raw_field(out_dir + "/" + c.name + ".maximal.bin", res.maximal, false);
  }
  const RatioStatistics st = summarize(ratios);
  const std::size_t half = consts.size() / 2;
  const double c_all = *std::max_element(consts.begin(), consts.end());
  Json results = {{"symbol", m.name()},
                  {"t_values", tg.t_values()},
                  {"caveat", BilinearResult::kCaveat},
                  {"l1_ratio", stats_json(st)},
                  {"identity_error", id_err},
                  {"majorization_constants", consts},
                  {"majorization_constant", c_all}};
  if (half >= 1) {
    const double c_a = *std::max_element(consts.begin(), consts.begin() + static_cast<long>(half));
    const double c_b = *std::max_element(consts.begin() + static_cast<long>(half), consts.end());
    const double deviation = std::abs(c_a - c_b) / (c_a + c_b);
    results["majorization_halves"] = {c_a, c_b};
    results["majorization_deviation"] = deviation;
    if (enabled(c.tolerances.at("majorization_stability")))
      o.verdicts.push_back(at_most("majorization_stability", deviation, c.tolerances.at("majorization_stability")));
  } else if (enabled(c.tolerances.at("majorization_stability"))) {
    throw ConfigError("majorization stability needs an ensemble of at least 2 trials");
  }
  o.results = results;
  if (identity && enabled(c.tolerances.at("identity")))
    o.verdicts.push_back(at_most("identity", *std::max_element(id_err.begin(), id_err.end()),
                                 c.tolerances.at("identity")));
  if (enabled(c.tolerances.at("ratio_max")))
    o.verdicts.push_back(at_most("ratio_max", st.max, c.tolerances.at("ratio_max")));
}

void run_gfunction(const ExperimentConfig& c, std::uint64_t seed, ExperimentOutcome& o) {
  const AnnularPiece piece = c.symbol->build_piece();
  const Grid grid = Grid::make(c.symbol->n, c.grid->points, c.grid->extent);
  const TrialEnsemble ens = make_ensemble(*c.ensemble, grid, seed);
  double worst = -std::numeric_limits<double>::infinity();
  bool all_hold = true;
  std::vector<double> g_l1, gt_l1, excess;
  o.samples.header = {"trial", "worst_excess", "G_l1", "Gtilde_l1", "sup_B_l1"};
  for (std::size_t i = 0; i < ens.count; ++i) {
    const auto [f, g] = ens.draw(i);
    const DilationGrid sg = effective_grid(piece, spectral_band(f), spectral_band(g), c.dilation->per_octave, true);
    const SquareFunctionCheck chk = square_function_check(piece, f, g, sg, c.tolerances.at("domination"));
    all_hold = all_hold && chk.holds;
    worst = std::max(worst, chk.worst_excess);
    excess.push_back(chk.worst_excess);
    g_l1.push_back(lp_norm(chk.g, 1.0));
    gt_l1.push_back(lp_norm(chk.g_tilde, 1.0));
    o.samples.rows.push_back({double(i), chk.worst_excess, g_l1.back(), gt_l1.back(), lp_norm(chk.sup_b, 1.0)});
  }
  o.results = {{"piece", piece.symbol.name()},
               {"worst_excess", excess},
               {"g_l1", g_l1},
               {"g_tilde_l1", gt_l1}};
  o.verdicts.push_back({"domination", all_hold, worst, 0.0, "<="});

  if (!enabled(c.tolerances.at("ftc"))) return;
  const auto [f, g] = ens.draw(0);
  const DilationRange range = effective_dilation_range(piece.annulus(), spectral_band(f), spectral_band(g));
  const double t = c.params.at("ftc_factor") * range.t_lo;
  const Field S = apply_bilinear(piece.symbol, f, g, t);
  std::vector<Index> strong;
  for (Index i = 0; i < S.size(); ++i)
    if (std::abs(S[i]) >= c.params.at("ftc_strength") * max_abs(S)) strong.push_back(i);
  std::mt19937_64 rng(ens.seed);
  std::shuffle(strong.begin(), strong.end(), rng);
  strong.resize(std::min(strong.size(), static_cast<std::size_t>(c.params.at("ftc_points"))));
  std::sort(strong.begin(), strong.end());
  const FtcReport ftc = ftc_check(piece, f, g, t, static_cast<std::size_t>(c.params.at("ftc_nodes")), strong);
  std::vector<double> direct_abs, err;
  for (std::size_t p = 0; p < strong.size(); ++p) {
    direct_abs.push_back(std::abs(ftc.direct[p]));
    err.push_back(std::abs(ftc.direct[p] - ftc.integrated[p]));
  }
  o.results["ftc"] = {{"t", t},
                      {"points", ftc.points},
                      {"abs_direct", direct_abs},
                      {"abs_error", err},
                      {"max_rel_error", ftc.max_rel_error}};
  o.verdicts.push_back(at_most("ftc", ftc.max_rel_error, c.tolerances.at("ftc")));
}

void run_kernel_decay(const ExperimentConfig& c, ExperimentOutcome& o) {
  const Symbol m = c.symbol->build_piece().symbol;
  const Grid freq = Grid::make(m.freq_dim(), c.grid->points, c.grid->extent);
  const int n = c.symbol->n;
  const double bound =
      enabled(c.params.at("bound")) ? c.params.at("bound") : -(n + c.symbol->lambda + 0.5);
  const KernelDecayReport rep = kernel_decay(m, freq, c.params.at("r_lo"), c.params.at("r_hi"),
                                             static_cast<int>(c.params.at("bins")), bound, c.tolerances.at("slope"));
  o.samples.header = {"bin_center", "envelope"};
  for (std::size_t b = 0; b < rep.bin_center.size(); ++b) o.samples.rows.push_back({rep.bin_center[b], rep.envelope[b]});
  o.results = {{"symbol", m.name()},
               {"max_imag_ratio", rep.max_imag_ratio},
               {"fit", fit_json(rep.fit)}};
  o.verdicts.push_back(from_fit("far_field_slope", rep.fit));
}

void run_convergence(const ExperimentConfig& c, ExperimentOutcome& o) {
  std::vector<double> ts;
  for (int k = 0; k <= static_cast<int>(c.params.at("halvings")); ++k)
    ts.push_back(std::ldexp(c.params.at("t_max"), -k));
  auto study = [&](Index points) {
    const Grid grid = Grid::make(1, points, c.grid->extent);
    const Field f = Field::sample(grid, [](const Point& x) { return std::exp(-pi * x[0] * x[0]); });
    const Field g = Field::sample(grid, [](const Point& x) {
      const double d = x[0] - 0.5;
      return std::exp(-pi * d * d / 2.0);
    });
    return convergence_study(c.symbol->lambda, 1, f, g, ts);
  };
  const ConvergenceTable table = study(c.grid->points);
  std::vector<double> errors;
  for (const auto& row : table.rows) errors.push_back(row.sup_error);
  o.results = {{"lambda", table.lambda}, {"t", ts}, {"sup_error", errors}};
  const auto oracle_points = static_cast<Index>(c.params.at("oracle_points"));
  std::vector<double> oracle(ts.size(), std::numeric_limits<double>::quiet_NaN());
  if (oracle_points > 0) {
    const ConvergenceTable ref = study(oracle_points);
    for (std::size_t i = 0; i < ts.size(); ++i) oracle[i] = ref.rows[i].sup_error;
    o.results["oracle_points"] = oracle_points;
    o.results["oracle_sup_error"] = oracle;
    o.verdicts.push_back(at_most("oracle", errors.back(), c.tolerances.at("oracle_factor") * oracle.back()));
  }
  o.samples.header = {"t", "sup_error", "oracle_sup_error"};
  for (std::size_t i = 0; i < ts.size(); ++i) o.samples.rows.push_back({ts[i], errors[i], oracle[i]});
  o.verdicts.push_back(below("threshold", errors.back(), c.tolerances.at("threshold")));
  double worst_growth = 0.0;
  for (std::size_t i = 1; i < errors.size(); ++i)
    worst_growth = std::max(worst_growth, errors[i] / errors[i - 1] - 1.0);
  o.results["worst_growth"] = worst_growth;
  o.verdicts.push_back({"non_increasing", table.non_increasing(c.tolerances.at("slack")), worst_growth,
                        c.tolerances.at("slack"), "<="});
}

void run_bessel(const ExperimentConfig& c, ExperimentOutcome& o) {
  const auto count = static_cast<int>(c.params.at("count"));
  const double lo = c.params.at("r_lo"), hi = c.params.at("r_hi");
  std::vector<double> radii;
  for (int i = 0; i < count; ++i) radii.push_back(lo + i * (hi - lo) / (count - 1));
  const int nodes = static_cast<int>(c.params.at("nodes"));
  const BesselIdentityReport rep = bessel_identity_check(radii, 0.0, nodes, c.params.at("normalize_at"));
  const BesselIdentityReport ctl =
      bessel_identity_check(radii, c.params.at("control_shift"), nodes, c.params.at("control_normalize_at"));
  o.samples.header = {"radius", "quadrature", "profile", "control_profile"};
  for (std::size_t i = 0; i < radii.size(); ++i)
    o.samples.rows.push_back({radii[i], rep.quadrature[i], rep.profile[i], ctl.profile[i]});
  o.results = {{"normalize_at", rep.normalize_at},
               {"constant", rep.constant},
               {"max_deviation", rep.max_deviation},
               {"control_shift", ctl.order_shift},
               {"control_normalize_at", ctl.normalize_at},
               {"control_constant", ctl.constant},
               {"control_max_deviation", ctl.max_deviation}};
  o.verdicts.push_back(below("deviation", rep.max_deviation, c.tolerances.at("deviation")));
  o.verdicts.push_back(above("negative_control", ctl.max_deviation, c.tolerances.at("control")));
}

void run_norm_ratio(const ExperimentConfig& c, std::uint64_t seed, ExperimentOutcome& o) {
  if (c.pieces) {
    PieceNormOptions opt;
    opt.lambda = c.symbol->lambda;
    opt.j_lo = c.pieces->j_lo;
    opt.j_hi = c.pieces->j_hi;
    opt.trials = c.ensemble->count;
    opt.seed = c.ensemble->seed.value_or(seed);
    opt.per_octave = c.dilation ? c.dilation->per_octave : opt.per_octave;
    opt.extent = c.grid->extent;
    opt.tolerance = c.tolerances.at("slope");
    const PieceNormDecay d = piece_norm_decay(opt);
    // C_eps 2^{-j(lambda-1-eps)}, anchored at the first maximum.
    const double eps = c.params.at("epsilon");
    std::vector<double> curve;
    for (int j : d.js)
      curve.push_back(d.stats.front().max * std::exp2(-(j - d.js.front()) * (opt.lambda - 1.0 - eps)));
    Json stats = Json::array();
    o.samples.header = {"j", "trial", "l1_ratio", "comparison"};
    for (std::size_t a = 0; a < d.js.size(); ++a) {
      stats.push_back(stats_json(d.stats[a]));
      for (std::size_t i = 0; i < d.stats[a].ratios.size(); ++i)
        o.samples.rows.push_back({double(d.js[a]), double(i), d.stats[a].ratios[i], curve[a]});
    }
    o.results = {{"js", d.js}, {"stats", stats}, {"fit", fit_json(d.fit)}, {"epsilon", eps},
                 {"comparison_curve", curve}};
    o.verdicts.push_back(from_fit("j_slope", d.fit));
    o.verdicts.push_back(below("negative_slope", d.fit.slope, 0.0));
    return;
  }
  const Symbol m = c.symbol->build_piece().symbol;
  const Grid grid = Grid::make(c.symbol->n, c.grid->points, c.grid->extent);
  const TrialEnsemble ens = make_ensemble(*c.ensemble, grid, seed);
  const double t = c.params.at("t");
  const RatioStatistics st =
      norm_ratio_estimate([&](const Field& f, const Field& g) { return apply_bilinear(m, f, g, t); }, ens);
  o.samples.header = {"trial", "l1_ratio"};
  for (std::size_t i = 0; i < st.ratios.size(); ++i) o.samples.rows.push_back({double(i), st.ratios[i]});
  o.results = {{"symbol", m.name()}, {"t", t}, {"l1_ratio", stats_json(st)}};
  if (enabled(c.tolerances.at("ratio_max")))
    o.verdicts.push_back(at_most("ratio_max", st.max, c.tolerances.at("ratio_max")));
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream os;
  os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os << text;
}

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::passed: return "passed";
    case Status::failed: return "failed";
    case Status::resolution_error: return "resolution_error";
    case Status::invalid: return "invalid";
    case Status::error: return "error";
  }
  return "error";
}

ExperimentOutcome run_experiment(const ExperimentConfig& config, std::uint64_t suite_seed,
                                 const std::string& out_dir) {
  ExperimentOutcome o;
  o.name = config.name;
  o.kind = config.kind;
  try {
    switch (config.kind) {
      case ExperimentKind::decompose: run_decompose(config, out_dir, o); break;
      case ExperimentKind::wavelet_decay: run_wavelet_decay(config, o); break;
      case ExperimentKind::maximal: run_maximal(config, suite_seed, out_dir, o); break;
      case ExperimentKind::gfunction: run_gfunction(config, suite_seed, o); break;
      case ExperimentKind::kernel_decay: run_kernel_decay(config, o); break;
      case ExperimentKind::convergence: run_convergence(config, o); break;
      case ExperimentKind::bessel_check: run_bessel(config, o); break;
      case ExperimentKind::norm_ratio: run_norm_ratio(config, suite_seed, o); break;
    }
    const bool pass = std::all_of(o.verdicts.begin(), o.verdicts.end(), [](const Verdict& v) { return v.pass; });
    o.status = pass ? Status::passed : Status::failed;
  } catch (const ResolutionError& e) {
    o.status = Status::resolution_error;
    o.message = e.what();
  } catch (const ConfigError& e) {
    o.status = Status::invalid;
    o.message = e.what();
  } catch (const InvalidParameterError& e) {
    o.status = Status::invalid;
    o.message = e.what();
  } catch (const InvalidGridError& e) {
    o.status = Status::invalid;
    o.message = e.what();
  } catch (const DomainError& e) {
    o.status = Status::invalid;
    o.message = e.what();
  } catch (const std::exception& e) {
    o.status = Status::error;
    o.message = e.what();
  }
  return o;
}

Json report_json(const ExperimentConfig& config, const ExperimentOutcome& outcome,
                 std::uint64_t suite_seed) {
  Json verdicts = Json::array();
  for (const auto& v : outcome.verdicts)
    verdicts.push_back(
        {{"name", v.name}, {"pass", v.pass}, {"value", v.value}, {"relation", v.relation}, {"threshold", v.threshold}});
  Json doc = {{"name", outcome.name},
              {"kind", to_string(outcome.kind)},
              {"suite_seed", suite_seed},
              {"config", config.source},
              {"status", to_string(outcome.status)},
              {"verdicts", verdicts},
              {"results", outcome.results},
              {"warnings", outcome.warnings}};
  if (!outcome.message.empty()) doc["message"] = outcome.message;
  return doc;
}

std::string to_csv(const Table& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  os << '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

int run(const std::string& config_path, const RunOptions& options, std::ostream& log) {
  SuiteConfig suite;
  try {
    Json doc = load_config_json(config_path);
    for (const auto& kv : options.overrides) apply_override(doc, kv);
    if (options.seed) doc["seed"] = *options.seed;
    if (options.out_dir) doc["output"] = *options.out_dir;
    if (options.threads) doc["threads"] = *options.threads;
    suite = parse_config(doc);
  } catch (const Error& e) {
    log << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  }

  set_thread_count(suite.threads);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(suite.output, ec);
  if (ec) {
    log << "cannot create output directory " << suite.output << ": " << ec.message() << '\n';
    return kExitInvalidConfig;
  }

  Json metadata = {{"config_path", config_path},
                   {"overrides", options.overrides},
                   {"threads", thread_count()},
                   {"started", timestamp()}};
  Json summary = {{"seed", suite.seed}, {"experiments", Json::array()}};
  Json timings = Json::object();
  bool any_invalid = false, any_resolution = false, any_failed = false;

  for (const auto& exp : suite.experiments) {
    log << "[" << exp.name << "] " << to_string(exp.kind) << " ..." << std::flush;
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentOutcome out = run_experiment(exp, suite.seed, suite.output);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    timings[exp.name] = secs;

    try {
      write_text(suite.output + "/" + exp.name + ".json", report_json(exp, out, suite.seed).dump(2) + "\n");
      write_text(suite.output + "/" + exp.name + ".csv", to_csv(out.samples));
    } catch (const Error& e) {
      log << " cannot write report: " << e.what() << '\n';
      return kExitInvalidConfig;
    }

    Json verdicts = Json::array();
    for (const auto& v : out.verdicts) verdicts.push_back({{"name", v.name}, {"pass", v.pass}});
    summary["experiments"].push_back({{"name", exp.name},
                                      {"kind", to_string(exp.kind)},
                                      {"status", to_string(out.status)},
                                      {"verdicts", verdicts}});
    log << ' ' << to_string(out.status);
    for (const auto& v : out.verdicts)
      log << ' ' << v.name << '=' << (v.pass ? "pass" : "FAIL") << '(' << v.value << ' ' << v.relation << ' '
          << v.threshold << ')';
    if (!out.message.empty()) log << ": " << out.message;
    log << '\n';
    any_invalid = any_invalid || out.status == Status::invalid;
    any_resolution = any_resolution || out.status == Status::resolution_error;
    any_failed = any_failed || out.status == Status::failed || out.status == Status::error;
  }

  const int code = any_invalid      ? kExitInvalidConfig
                   : any_resolution ? kExitResolution
                   : any_failed     ? kExitVerdictFailure
                                    : kExitPass;
  summary["pass"] = code == kExitPass;
  summary["exit_code"] = code;
  metadata["finished"] = timestamp();
  metadata["seconds"] = timings;
  try {
    write_text(suite.output + "/report.json", summary.dump(2) + "\n");
    write_text(suite.output + "/metadata.json", metadata.dump(2) + "\n");
  } catch (const Error& e) {
    log << "cannot write report: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return code;
}

}  // namespace bilmax::cli
