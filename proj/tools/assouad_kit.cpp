// assouad-kit: command-line front end for the assouad_kit library.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "assouad_kit/closed_form.hpp"
#include "assouad_kit/estimators.hpp"
#include "assouad_kit/families.hpp"
#include "assouad_kit/ifs.hpp"
#include "assouad_kit/json_io.hpp"
#include "assouad_kit/manifest.hpp"
#include "assouad_kit/percolation.hpp"
#include "assouad_kit/pointset_io.hpp"
#include "assouad_kit/svg_plot.hpp"
#include "assouad_kit/verify.hpp"

using namespace akit;

namespace {

enum Exit { kPass = 0, kCheckFailure = 1, kUsage = 2, kCap = 3 };

using Clock = std::chrono::steady_clock;

struct Context {
  RunManifest manifest;
  Clock::time_point start = Clock::now();
  std::string output;

  void stamp() { manifest.wall_time_seconds = std::chrono::duration<double>(Clock::now() - start).count(); }

  /// Writes to --output, or stdout when it is empty.
  void emit(const std::string& text) const {
    if (output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream os(output, std::ios::binary);
    if (!os) fail(ErrorKind::io, "cannot open " + output + " for writing");
    os << text;
  }

  void emit_json(json j) {
    stamp();
    j["manifest"] = manifest.to_json();
    emit(j.dump(2) + "\n");
  }

  void emit_pointset(const PointSet& set) {
    stamp();
    std::ostringstream os;
    write_pointset(os, set, {manifest.comment_line()});
    emit(os.str());
  }

  void emit_curve(const CurveTable& t, const std::vector<std::string>& extra = {}) {
    stamp();
    std::vector<std::string> comments{manifest.comment_line()};
    comments.insert(comments.end(), extra.begin(), extra.end());
    std::ostringstream os;
    write_curve(os, t, comments);
    emit(os.str());
  }
};

struct SpecSource {
  std::string file;
  std::string preset;

  void attach(CLI::App* cmd) {
    auto* f = cmd->add_option("--spec", file, "JSON spec file")->check(CLI::ExistingFile);
    auto* p = cmd->add_option("--preset", preset, "built-in spec name");
    f->excludes(p);
  }

  GeneratorSpec load(RunManifest& m) const {
    if (!file.empty()) {
      m.add_input(file);
      return load_spec(file);
    }
    if (!preset.empty()) return akit::preset(preset);
    fail(ErrorKind::invalid_argument, "give --spec FILE or --preset NAME");
  }
};

int run_generate(Context& ctx, const SpecSource& src, int depth, std::size_t chaos, std::uint64_t seed) {
  auto spec = src.load(ctx.manifest);
  PointSet set = [&] {
    if (chaos > 0) {
      ctx.manifest.seeds.push_back(seed);
      return chaos_game(spec.measure(), chaos, seed);
    }
    if (auto* c = std::get_if<CarpetSpec>(&spec.shape)) return carpet_attractor(*c, depth);
    if (auto* f = std::get_if<IfsSpec>(&spec.shape)) return attractor_by_depth(*f, depth);
    if (auto* q = std::get_if<SequenceSpec>(&spec.shape)) return generate_sequence(*q);
    return generate_spiral(std::get<SpiralSpec>(spec.shape));
  }();
  ctx.emit_pointset(set);
  return kPass;
}

int run_dimension(Context& ctx, const SpecSource& src, int affinity_levels) {
  auto spec = src.load(ctx.manifest);
  json out{{"schema", kReportSchema}, {"spec", spec_to_json(spec)}};
  if (auto* c = std::get_if<CarpetSpec>(&spec.shape)) {
    out["set"] = to_json(carpet_dimensions(*c));
    if (!spec.weights.empty()) out["measure"] = to_json(carpet_measure_dimensions(spec.measure(), c->columns_separated()));
  } else if (auto* f = std::get_if<IfsSpec>(&spec.shape)) {
    const bool similar =
        std::all_of(f->maps.begin(), f->maps.end(), [](const AffineMap& m) { return m.kind == MapKind::similarity; });
    if (similar) {
      out["similarity_dimension"] = similarity_dimension(f->ratios());
      if (!spec.weights.empty()) {
        const bool separated = check_strong_separation(*f, 4).separated;
        out["measure"] = to_json(self_similar_measure_dimensions(f->ratios(), spec.weights, separated));
      }
    }
    auto aff = affinity_dimension(linear_parts(*f), affinity_levels);
    out["affinity_dimension"] = {{"value", aff.dimension}, {"trace", aff.trace}};
  } else if (auto* q = std::get_if<SequenceSpec>(&spec.shape)) {
    auto* poly = std::get_if<PolynomialSequence>(&q->kind);
    if (!poly) fail(ErrorKind::invalid_argument, "closed forms exist only for polynomial sequences");
    out["set"] = to_json(sequence_dimensions(poly->p));
  } else {
    out["set"] = to_json(spiral_dimensions(std::get<SpiralSpec>(spec.shape).p));
  }
  ctx.emit_json(out);
  return kPass;
}

SpectrumCurve closed_form_curve(const GeneratorSpec& spec, std::size_t samples, bool lower) {
  const auto kind = lower ? SpectrumCurve::Kind::lower : SpectrumCurve::Kind::assouad;
  if (auto* c = std::get_if<CarpetSpec>(&spec.shape)) {
    const CarpetSpec carpet = *c;
    return sample_curve([&](double t) { return lower ? carpet_spectrum(carpet, t).second : carpet_spectrum(carpet, t).first; },
                        samples, kind, "Bedford-McMullen carpet formulas");
  }
  if (lower) fail(ErrorKind::invalid_argument, "lower spectrum formulas exist only for carpets");
  if (auto* q = std::get_if<SequenceSpec>(&spec.shape)) {
    auto* poly = std::get_if<PolynomialSequence>(&q->kind);
    if (!poly) fail(ErrorKind::invalid_argument, "closed forms exist only for polynomial sequences");
    const double p = poly->p;
    return sample_curve([p](double t) { return sequence_spectrum(p, t); }, samples, kind, "polynomial sequence");
  }
  if (auto* s = std::get_if<SpiralSpec>(&spec.shape)) {
    const double p = s->p;
    return sample_curve([p](double t) { return spiral_spectrum(p, t); }, samples, kind, "polynomial spiral");
  }
  fail(ErrorKind::invalid_argument, "no closed-form spectrum for general IFS specs");
}

int run_spectrum(Context& ctx, const SpecSource& src, std::size_t samples, bool lower, bool as_json) {
  auto spec = src.load(ctx.manifest);
  auto curve = closed_form_curve(spec, samples, lower);
  if (as_json) {
    ctx.emit_json({{"schema", kReportSchema}, {"spec", spec_to_json(spec)}, {"curve", to_json(curve)}});
  } else {
    ctx.emit_curve({"theta", lower ? "lower_spectrum" : "assouad_spectrum", curve.source, curve.theta, curve.values});
  }
  return kPass;
}

struct EstimateArgs {
  std::string method;
  std::string input;
  int kmin = 0;
  int kmax = 40;
  double theta = 0.5;
  std::size_t curve = 0;
  double floor = 16.0;
  std::size_t max_centers = 4096;
  std::uint64_t seed = 0;
  std::string table;
};

int run_estimate(Context& ctx, const EstimateArgs& a) {
  ctx.manifest.add_input(a.input);
  ctx.manifest.seeds.push_back(a.seed);
  const auto set = load_pointset(a.input);
  CenterPolicy policy;
  policy.max_centers = a.max_centers;
  policy.seed = a.seed;
  const bool lower = a.method == "lower-spectrum";
  auto spectrum = [&](double theta) {
    return lower ? estimate_lower_spectrum(set, theta, a.kmin, a.kmax, policy)
                 : estimate_assouad_spectrum(set, theta, a.kmin, a.kmax, policy);
  };
  if (a.curve > 0) {
    if (a.method != "spectrum" && !lower) fail(ErrorKind::invalid_argument, "--curve applies to spectrum estimates");
    CurveTable t{"theta", lower ? "lower_spectrum" : "assouad_spectrum", "estimate " + set.label(), {}, {}};
    std::vector<std::string> skipped;
    for (std::size_t i = 1; i <= a.curve; ++i) {
      const double theta = static_cast<double>(i) / static_cast<double>(a.curve + 1);
      try {
        const auto r = spectrum(theta);
        t.xs.push_back(theta);
        t.ys.push_back(r.estimate);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::too_few_scales) throw;
        skipped.push_back("skipped theta " + format_double(theta) + ": " + e.what());
      }
    }
    if (t.xs.size() < 2) fail(ErrorKind::too_few_scales, "fewer than two theta values had enough scales");
    ctx.emit_curve(t, skipped);
    return kPass;
  }
  FitReport r;
  if (a.method == "box") r = fit_box_dimension(set, a.kmin, a.kmax);
  else if (a.method == "assouad") r = estimate_assouad_dimension(set, a.floor, a.kmin, a.kmax, policy);
  else r = spectrum(a.theta);
  if (!a.table.empty()) {
    CurveTable t{"k", "log2_count", r.method, {}, {}};
    for (const auto& s : r.samples) {
      t.xs.push_back(s.k);
      t.ys.push_back(s.y / std::log(2.0));
    }
    ctx.stamp();
    save_curve(a.table, t, {ctx.manifest.comment_line()});
  }
  json out{{"schema", kReportSchema}, {"method", a.method}, {"fit", to_json(r)}};
  if (a.method == "spectrum" || lower) out["theta"] = a.theta;
  ctx.emit_json(out);
  return kPass;
}

int run_percolate(Context& ctx, PercolationConfig c, const std::string& emit) {
  c.validate();
  ctx.manifest.seeds.push_back(c.seed);
  auto tree = simulate(c);
  if (emit == "pointset") {
    ctx.emit_pointset(tree_to_pointset(tree));
    return kPass;
  }
  json out{{"schema", kReportSchema},
           {"config", {{"d", c.d}, {"m", c.m}, {"p", c.p}, {"depth", c.depth}, {"seed", c.seed}}},
           {"Z_k", tree.counts},
           {"survived", tree.survived()},
           {"full_subgrid_max_i", full_subgrid_max_i(tree)},
           {"hash", tree.hash}};
  if (c.supercritical()) out["box_dimension_if_surviving"] = c.box_dimension();
  ctx.emit_json(out);
  return kPass;
}

int run_verify(Context& ctx, const std::string& suite, bool as_json) {
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  json reports = json::array();
  std::ostringstream text;
  bool ok = true;
  for (const auto& n : names) {
    auto rep = run_suite(n);
    ok = ok && rep.passed();
    json checks = json::array();
    text << (rep.passed() ? "PASS " : "FAIL ") << rep.name << " (" << verify_detail::num(rep.seconds, 3) << " s)\n";
    for (const auto& c : rep.checks) {
      text << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << "\n      reference: " << c.reference
           << "\n      expected: " << c.expected << "  observed: " << c.observed << "  tolerance: " << c.tolerance
           << "\n";
      checks.push_back({{"name", c.name},
                        {"reference", c.reference},
                        {"expected", c.expected},
                        {"observed", c.observed},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    }
    for (const auto& note : rep.notes) text << "  note: " << note << "\n";
    reports.push_back(
        {{"suite", rep.name}, {"pass", rep.passed()}, {"seconds", rep.seconds}, {"checks", checks}, {"notes", rep.notes}});
  }
  if (as_json) ctx.emit_json({{"schema", kReportSchema}, {"pass", ok}, {"suites", reports}});
  else ctx.emit(text.str());
  return ok ? kPass : kCheckFailure;
}

struct PlotArgs {
  std::vector<std::string> curves;
  std::vector<double> bounds;
  std::string title;
  double y_max = 0.0;
};

int run_plot(Context& ctx, const PlotArgs& a) {
  std::vector<PlotSeries> series;
  PlotFrame frame;
  frame.title = a.title;
  bool spectral = true;
  double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
  for (const auto& path : a.curves) {
    ctx.manifest.add_input(path);
    auto t = load_curve(path);
    spectral = spectral && t.x_name == "theta";
    for (double x : t.xs) lo_x = std::min(lo_x, x), hi_x = std::max(hi_x, x);
    for (double y : t.ys) lo_y = std::min(lo_y, y), hi_y = std::max(hi_y, y);
    frame.x_label = t.x_name;
    frame.y_label = t.y_name;
    series.push_back({t.label.empty() ? path : t.label, t.xs, t.ys, false});
  }
  if (!a.bounds.empty()) {
    if (a.bounds.size() != 2 && a.bounds.size() != 3)
      fail(ErrorKind::invalid_argument, "--bounds takes box,quasi_assouad[,rho]");
    const double box = a.bounds[0], qa = a.bounds[1];
    require(qa > 0.0, "quasi-Assouad bound must be positive");
    const double rho = a.bounds.size() == 3 ? a.bounds[2] : 1.0 - box / qa;
    for (auto& s : bounds_overlay(box, qa, rho)) series.push_back(std::move(s));
    hi_y = std::max(hi_y, qa);
    if (a.curves.empty()) frame.y_label = "dimension";
  }
  if (series.empty()) fail(ErrorKind::empty_set, "empty curve: give --curve FILE or --bounds");
  if (spectral) {
    frame.x_min = 0.0;
    frame.x_max = 1.0;
    frame.y_min = 0.0;
    frame.y_max = a.y_max > 0.0 ? a.y_max : std::max(1.0, std::ceil(hi_y));
  } else {
    frame.x_min = lo_x;
    frame.x_max = hi_x > lo_x ? hi_x : lo_x + 1.0;
    frame.y_min = std::floor(lo_y);
    frame.y_max = std::max(std::ceil(hi_y), frame.y_min + 1.0);
  }
  if (!ctx.output.empty()) {
    const std::string sidecar = ctx.output + ".manifest.json";
    frame.comment = "manifest: " + sidecar.substr(sidecar.find_last_of('/') + 1);
    ctx.emit(render_svg(series, frame));
    ctx.stamp();
    std::ofstream os(sidecar);
    if (!os) fail(ErrorKind::io, "cannot open " + sidecar + " for writing");
    os << ctx.manifest.to_json().dump(2) << "\n";
  } else {
    ctx.emit(render_svg(series, frame));
  }
  return kPass;
}

int exit_code(ErrorKind k) { return k == ErrorKind::cap_exceeded ? kCap : kUsage; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"assouad-kit: dimension calculators, estimators and fractal percolation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Context ctx;
  ctx.manifest.command_line = {argv, argv + argc};

  SpecSource gen_src, dim_src, spec_src;
  int depth = 8, affinity_levels = 6;
  std::size_t chaos = 0, samples = 99;
  std::uint64_t seed = 0;
  bool lower = false, as_json = false;

  auto* gen = app.add_subcommand("generate", "sample a set as a point-set CSV");
  gen_src.attach(gen);
  gen->add_option("--depth", depth, "word depth for IFS and carpet specs")->check(CLI::Range(0, 40));
  gen->add_option("--chaos", chaos, "sample this many chaos-game points instead");
  gen->add_option("--seed", seed, "chaos-game seed");
  gen->add_option("-o,--output", ctx.output, "output file (default stdout)");

  auto* dim = app.add_subcommand("dimension", "closed-form dimensions as JSON");
  dim_src.attach(dim);
  dim->add_option("--affinity-levels", affinity_levels, "word length for the affinity dimension")->check(CLI::Range(1, 20));
  dim->add_option("-o,--output", ctx.output, "output file (default stdout)");

  auto* spec = app.add_subcommand("spectrum", "closed-form spectrum curve");
  spec_src.attach(spec);
  spec->add_option("--samples", samples, "number of theta samples")->check(CLI::Range(2, 100000));
  spec->add_flag("--lower", lower, "lower spectrum instead of Assouad spectrum");
  spec->add_flag("--json", as_json, "JSON instead of curve CSV");
  spec->add_option("-o,--output", ctx.output, "output file (default stdout)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "estimate a dimension from a point-set CSV");
  estimate->add_option("method", est.method, "box | assouad | spectrum | lower-spectrum")
      ->required()
      ->check(CLI::IsMember({"box", "assouad", "spectrum", "lower-spectrum"}));
  estimate->add_option("-i,--input", est.input, "point-set CSV")->required()->check(CLI::ExistingFile);
  estimate->add_option("--kmin", est.kmin, "finest-scale exponent range start (r = 2^-k)");
  estimate->add_option("--kmax", est.kmax, "range end");
  estimate->add_option("--theta", est.theta, "spectrum parameter in (0,1)");
  estimate->add_option("--curve", est.curve, "estimate the spectrum at this many theta values");
  estimate->add_option("--floor", est.floor, "smallest R/r ratio for the Assouad estimate");
  estimate->add_option("--max-centers", est.max_centers, "ball centres per scale");
  estimate->add_option("--seed", est.seed, "centre-selection seed");
  estimate->add_option("--table", est.table, "also write the (k, log2 N) count table here");
  estimate->add_option("-o,--output", ctx.output, "output file (default stdout)");

  PercolationConfig perc;
  std::string emit = "stats";
  auto* percolate = app.add_subcommand("percolate", "simulate Mandelbrot percolation");
  percolate->add_option("--d", perc.d, "ambient dimension");
  percolate->add_option("--m", perc.m, "subdivision per axis");
  percolate->add_option("--p", perc.p, "retention probability");
  percolate->add_option("--depth", perc.depth, "levels");
  percolate->add_option("--seed", perc.seed, "seed");
  percolate->add_option("--emit", emit, "stats | pointset")->check(CLI::IsMember({"stats", "pointset"}));
  percolate->add_option("-o,--output", ctx.output, "output file (default stdout)");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a named check suite");
  std::string suite_help = "suite name or all:";
  for (const auto& n : suite_names()) suite_help += " " + n;
  verify->add_option("suite", suite, suite_help)->required();
  verify->add_flag("--json", as_json, "JSON report");
  verify->add_option("-o,--output", ctx.output, "output file (default stdout)");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "render curve CSVs as SVG");
  plot->add_option("--curve", plot_args.curves, "curve CSV (repeatable)")->check(CLI::ExistingFile);
  plot->add_option("--bounds", plot_args.bounds, "overlay spectrum bounds: box,quasi_assouad[,rho]")->delimiter(',');
  plot->add_option("--title", plot_args.title, "plot title");
  plot->add_option("--y-max", plot_args.y_max, "top of the value axis");
  plot->add_option("-o,--output", ctx.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*gen) return run_generate(ctx, gen_src, depth, chaos, seed);
    if (*dim) return run_dimension(ctx, dim_src, affinity_levels);
    if (*spec) return run_spectrum(ctx, spec_src, samples, lower, as_json);
    if (*estimate) return run_estimate(ctx, est);
    if (*percolate) return run_percolate(ctx, perc, emit);
    if (*verify) return run_verify(ctx, suite, as_json);
    if (*plot) return run_plot(ctx, plot_args);
  } catch (const Error& e) {
    std::cerr << "assouad-kit: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "assouad-kit: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
