// Copyright 2026 The tsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tsp/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "tsp/corpus.hpp"
#include "tsp/events.hpp"
#include "tsp/logic.hpp"
#include "tsp/metric.hpp"
#include "tsp/orthoalgebra.hpp"
#include "tsp/semiclassical.hpp"
#include "tsp/states.hpp"
#include "tsp/test_space.hpp"

namespace tsp::cli {

void Report::section(std::string title) { sections_.push_back({std::move(title), {}}); }

void Report::add(std::string key, std::string value) {
  if (sections_.empty()) section("report");
  sections_.back().rows.emplace_back(std::move(key), std::move(value));
}

void Report::add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }

void Report::add(std::string key, std::uint64_t value) { add(std::move(key), std::to_string(value)); }

void Report::add(std::string key, double value, int precision) {
  if (std::isinf(value)) {
    add(std::move(key), std::string(value > 0 ? "inf" : "-inf"));
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  add(std::move(key), std::string(buf));
}

std::string Report::render(Format format) const {
  std::ostringstream out;
  bool first = true;
  for (const auto& s : sections_) {
    if (format == Format::machine) {
      for (const auto& [k, v] : s.rows) out << s.title << '.' << k << '\t' << v << '\n';
      continue;
    }
    if (!first) out << '\n';
    first = false;
    out << '[' << s.title << "]\n";
    std::size_t width = 0;
    for (const auto& row : s.rows) width = std::max(width, row.first.size());
    for (const auto& [k, v] : s.rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return out.str();
}

namespace {

struct Context {
  std::istream& in;
  std::ostream& out;
  Report report;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot read '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot write '" + path + "'");
  file << content;
  if (!file) throw InvalidInput("failed writing '" + path + "'");
}

std::string sidecar_path(const std::string& tsp_path) {
  const std::string ext = ".tsp";
  if (tsp_path.size() > ext.size() && tsp_path.compare(tsp_path.size() - ext.size(), ext.size(), ext) == 0) {
    return tsp_path.substr(0, tsp_path.size() - ext.size()) + ".coords";
  }
  return tsp_path + ".coords";
}

MetricSample load_sample(const std::string& path, const std::string& coords, double tol, std::istream& in) {
  if (path == "-" && coords.empty()) throw InvalidInput("reading a sample from stdin needs --coords");
  const TestSpace space = parse_test_space(read_input(path, in));
  const std::string coords_path = coords.empty() ? sidecar_path(path) : coords;
  return parse_metric_sample(space, read_input(coords_path, in), tol);
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Args {
  std::string format = "plain";
  bool strict = false;
  std::string file;
  std::string coords;
  std::string output;
  std::size_t event_cap = std::size_t{1} << 20;
  bool dispersion_free = false;
  bool udf = false;
  std::size_t max_outcomes = 24;
  std::size_t dimension = 3;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  double ortho_tol = 1e-9;
  double cap_angle = 30.0;
  std::size_t pairs = 500;
  std::string basis = "auto:50";
  double delta = 0.3;
  double radius = 0.0;
  double margin = 1e-6;
  double resample_factor = 1.0;
  std::string name;
};

int cmd_info(Context& ctx, const Args& a) {
  const TestSpace ts = parse_test_space(read_input(a.file, ctx.in));
  auto& r = ctx.report;
  r.section("info");
  r.add("outcomes", std::uint64_t{ts.outcome_count()});
  r.add("tests", std::uint64_t{ts.test_count()});
  r.add("rank", std::uint64_t{ts.rank()});
  try {
    r.add("events", std::uint64_t{enumerate_events(ts, {a.event_cap}).size()});
  } catch (const CapExceeded&) {
    r.add("events", "over-cap");
  }
  const auto redundant = redundant_test_pairs(ts);
  r.add("redundant_pairs", std::uint64_t{redundant.size()});
  for (const auto& [i, j] : redundant) r.add("redundant", ts.format_set(ts.test(i)) + " < " + ts.format_set(ts.test(j)));
  return 0;
}

int cmd_logic(Context& ctx, const Args& a) {
  const TestSpace ts = parse_test_space(read_input(a.file, ctx.in));
  auto& r = ctx.report;
  r.section("logic");
  LogicOptions options;
  options.events.cap = a.event_cap;
  const auto alg = is_algebraic(ts, options.events);
  r.add("algebraic", alg.algebraic);
  if (!alg.algebraic) {
    const auto& w = *alg.counterexample;
    r.add("counterexample", "A=" + ts.format_set(w.a) + " B=" + ts.format_set(w.b) + " C=" + ts.format_set(w.c));
    return a.strict ? 1 : 0;
  }
  const Logic logic = build_logic(ts, options);
  r.add("events", std::uint64_t{logic.events().size()});
  r.add("classes", std::uint64_t{logic.size()});
  r.add("sum_pairs", std::uint64_t{logic.algebra().defined_pairs()});
  r.add("digest", hex64(logic.algebra().digest()));
  const auto flags = check_coherence(logic.algebra());
  r.section("coherence");
  r.add("orthocoherent", flags.orthocoherent);
  r.add("osum_is_join", flags.osum_is_join);
  r.add("omp", flags.omp);
  r.add("consistent", flags.consistent());
  if (flags.missing_join) {
    const auto& L = logic.algebra();
    r.add("missing_join", L.label(flags.missing_join->first) + " " + L.label(flags.missing_join->second));
  }
  if (!a.output.empty()) write_file(a.output, format_orthoalgebra(logic.algebra()));
  return (a.strict && !flags.consistent()) ? 1 : 0;
}

int cmd_states(Context& ctx, const Args& a) {
  const TestSpace ts = parse_test_space(read_input(a.file, ctx.in));
  auto& r = ctx.report;
  bool negative = false;
  r.section("states");
  const auto feasible = find_state(ts);
  r.add("feasible", feasible.state.has_value());
  if (feasible.state) {
    r.add("state", format_state(ts, *feasible.state).substr(6));
  } else {
    negative = true;
    std::string z;
    for (std::size_t t = 0; t < ts.test_count(); ++t) {
      if (t) z += ' ';
      z += ts.format_set(ts.test(t)) + "=" + format_rational((*feasible.certificate)[t]);
    }
    r.add("certificate", z);
  }
  DispersionFreeOptions df;
  df.max_outcomes = a.max_outcomes;
  if (a.dispersion_free) {
    const auto all = dispersion_free_states(ts, df);
    r.section("dispersion_free");
    r.add("count", std::uint64_t{all.size()});
    for (const auto& s : all) r.add("state", format_state(ts, s).substr(6));
  }
  if (a.udf) {
    const auto u = is_udf(ts, df);
    r.section("udf");
    r.add("udf", u.udf);
    if (u.uncovered) {
      r.add("uncovered", ts.id(*u.uncovered));
      negative = true;
    }
  }
  return (a.strict && negative) ? 1 : 0;
}

int cmd_oa_roundtrip(Context& ctx, const Args& a) {
  const OrthoalgebraTable L = parse_orthoalgebra(read_input(a.file, ctx.in));
  auto& r = ctx.report;
  r.section("roundtrip");
  r.add("elements", std::uint64_t{L.size()});
  const TestSpace ts = oa_to_test_space(L);
  r.add("outcomes", std::uint64_t{ts.outcome_count()});
  r.add("tests", std::uint64_t{ts.test_count()});
  const Logic logic = build_logic(ts);
  r.add("classes", std::uint64_t{logic.size()});
  const auto iso = roundtrip_logic(L);
  r.add("isomorphic", iso.has_value());
  if (iso) {
    for (std::size_t p = 0; p < iso->size(); ++p) r.add("map", logic.algebra().label(p) + " -> " + L.label((*iso)[p]));
  }
  return (a.strict && !iso) ? 1 : 0;
}

int cmd_metric_check(Context& ctx, const Args& a) {
  const MetricSample sample = load_sample(a.file, a.coords, a.ortho_tol, ctx.in);
  const auto& space = sample.space();
  auto& r = ctx.report;
  std::uint64_t violations = 0;

  r.section("sample");
  r.add("dimension", std::uint64_t{sample.dimension()});
  r.add("outcomes", std::uint64_t{sample.size()});
  r.add("tests", std::uint64_t{space.test_count()});
  r.add("rank", std::uint64_t{space.rank()});
  r.add("ortho_tol", a.ortho_tol, 12);
  r.add("frames_orthonormal", true);

  r.section("rank");
  std::size_t largest = 0;
  for (const auto& s : maximal_orthogonal_subsets(sample)) largest = std::max(largest, s.size());
  r.add("max_orthogonal_subset", std::uint64_t{largest});
  if (largest > sample.dimension()) ++violations;
  const double cap = chord_from_angle(a.cap_angle * 3.14159265358979323846 / 180.0);
  r.add("cap_radius", cap, 6);
  try {
    const auto bound = rank_bound(sample, cap);
    r.add("cap_bound", std::uint64_t{bound.bound});
    r.add("caps_totally_non_orthogonal", true);
    if (bound.bound < largest) ++violations;
  } catch (const NotTotallyNonOrthogonal& e) {
    r.add("caps_totally_non_orthogonal", false);
    r.add("offending_pair", space.id(e.pair().first) + " " + space.id(e.pair().second));
    ++violations;
  }
  double min_tno = std::numeric_limits<double>::infinity();
  const std::size_t probes = std::min<std::size_t>(sample.size(), 64);
  for (std::size_t i = 0; i < probes; ++i) min_tno = std::min(min_tno, tno_radius(sample, i));
  r.add("min_tno_radius", min_tno, 6);

  r.section("hyperspace");
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<std::size_t> pick(0, space.test_count() - 1);
  std::uint64_t order_bad = 0;
  std::uint64_t guarded = 0;
  std::uint64_t guard_bad = 0;
  std::uint64_t union_bad = 0;
  for (std::size_t k = 0; k < a.pairs; ++k) {
    const PointSet x = sample.test_points(pick(rng));
    const PointSet y = sample.test_points(pick(rng));
    const double h = hausdorff_distance(x, y);
    if (x.size() == y.size() && h > matching_distance(x, y)) ++order_bad;
    if (h < 0.5 * std::min(separation(x), separation(y))) {
      ++guarded;
      if (!event_cardinality_locally_constant(x, y)) ++guard_bad;
    }
    const PointSet z = sample.test_points(pick(rng));
    PointSet xy = x, xz = x;
    xy.insert(xy.end(), y.begin(), y.end());
    xz.insert(xz.end(), z.begin(), z.end());
    if (hausdorff_distance(xy, xz) > hausdorff_distance(y, z)) ++union_bad;
  }
  r.add("pairs", std::uint64_t{a.pairs});
  r.add("hausdorff_above_matching", order_bad);
  r.add("guarded_pairs", guarded);
  r.add("guard_violations", guard_bad);
  r.add("union_violations", union_bad);
  violations += order_bad + guard_bad + union_bad;

  r.section("summary");
  r.add("violations", violations);
  return (a.strict && violations > 0) ? 1 : 0;
}

int cmd_sample_frames(Context& ctx, const Args& a) {
  if (a.output.empty()) throw InvalidInput("sample-frames needs -o <file.tsp>");
  const MetricSample sample = sample_frames(a.dimension, a.count, a.seed);
  const std::string coords = a.coords.empty() ? sidecar_path(a.output) : a.coords;
  write_file(a.output, format_test_space(sample.space()));
  write_file(coords, format_coordinates(sample));
  auto& r = ctx.report;
  r.section("frames");
  r.add("dimension", std::uint64_t{a.dimension});
  r.add("frames", std::uint64_t{a.count});
  r.add("outcomes", std::uint64_t{sample.size()});
  r.add("seed", a.seed);
  r.add("tsp", a.output);
  r.add("coords", coords);
  return 0;
}

void report_extraction(Report& r, const std::string& title, const MetricSample& sample, const ExtractionResult& x) {
  r.section(title);
  r.add("frames", std::uint64_t{sample.space().test_count()});
  r.add("basis", std::uint64_t{x.basis_hits.size()});
  r.add("selected", std::uint64_t{x.selected.size()});
  r.add("hits", std::uint64_t{x.hit_count()});
  r.add("failures", std::uint64_t{x.failures.size()});
  std::string failed;
  for (auto f : x.failures) failed += (failed.empty() ? "" : " ") + std::to_string(f);
  if (!failed.empty()) r.add("failed_opens", failed);
  r.add("coverage_radius", x.coverage_radius, 6);
  r.add("density_target", x.density_target, 6);
  r.add("density_met", x.density_met());
}

int cmd_extract(Context& ctx, const Args& a) {
  if (!(a.resample_factor >= 1.0)) throw InvalidInput("--resample-factor must be at least 1");
  MetricSample sample = load_sample(a.file, a.coords, a.ortho_tol, ctx.in);
  std::vector<VietorisBasicOpen> basis;
  if (a.basis.rfind("auto:", 0) == 0) {
    std::size_t count = 0;
    try {
      count = std::stoul(a.basis.substr(5));
    } catch (const std::exception&) {
      throw InvalidInput("bad --basis '" + a.basis + "'");
    }
    const double radius = a.radius > 0 ? a.radius : a.delta / 4.0;
    basis = auto_basis(sample, count, radius).opens;
  } else {
    basis = parse_basis(read_input(a.basis, ctx.in));
  }
  ExtractionOptions options;
  options.margin = a.margin;
  ExtractionResult result = extract_semiclassical(sample, basis, a.delta, options);
  auto& r = ctx.report;
  report_extraction(r, "extract", sample, result);
  if (!result.failures.empty() && a.resample_factor > 1.0) {
    const auto frames = sample.space().test_count();
    const auto extra = static_cast<std::size_t>(static_cast<double>(frames) * (a.resample_factor - 1.0));
    if (extra > 0) {
      sample = extend_frames(sample, extra, a.seed);
      result = extract_semiclassical(sample, basis, a.delta, options);
      report_extraction(r, "resampled", sample, result);
    }
  }
  if (!result.selected.empty()) {
    const auto model = hidden_variable_state(sample, result, a.seed);
    r.section("hidden_variable");
    r.add("outcomes", std::uint64_t{model.space.outcome_count()});
    r.add("semiclassical", is_semiclassical(model.space).semiclassical);
    r.add("state_valid", verify_state(model.space, model.state).valid);
    if (!a.output.empty()) {
      write_file(a.output, format_test_space(model.space));
      PointSet points;
      for (const auto& id : model.space.ids()) points.push_back(sample.point(sample.space().index_of(id)));
      write_file(sidecar_path(a.output), format_coordinates(MetricSample(model.space, points, sample.ortho_tol())));
    }
  }
  const bool negative = !result.failures.empty() || !result.density_met();
  return (a.strict && negative) ? 1 : 0;
}

int cmd_gen(Context& ctx, const Args& a) {
  ctx.out << format_test_space(corpus::by_name(a.name));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite test spaces: events, logics, states, frame samples and semi-classical extraction", "tsp"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--format", a.format, "Report format")->check(CLI::IsMember({"plain", "machine"}));
  app.add_flag("--strict", a.strict, "Exit 1 on negative analysis results");

  auto* info = app.add_subcommand("info", "Outcomes, tests, rank, events and redundancy");
  info->add_option("file", a.file, ".tsp file or - for stdin")->required();
  info->add_option("--event-cap", a.event_cap, "Event enumeration cap");

  auto* logic = app.add_subcommand("logic", "Algebraicity, logic size and the orthocoherence flags");
  logic->add_option("file", a.file)->required();
  logic->add_option("--event-cap", a.event_cap);
  logic->add_option("-o,--output", a.output, "Write the logic as an orthoalgebra file");

  auto* states = app.add_subcommand("states", "State feasibility and dispersion-free states");
  states->add_option("file", a.file)->required();
  states->add_flag("--dispersion-free", a.dispersion_free, "List all dispersion-free states");
  states->add_flag("--udf", a.udf, "Decide unital dispersion-freeness");
  states->add_option("--max-outcomes", a.max_outcomes, "Outcome cap for dispersion-free search");

  auto* oa = app.add_subcommand("oa", "Orthoalgebra tools");
  oa->require_subcommand(1);
  auto* roundtrip = oa->add_subcommand("roundtrip", "Rebuild an orthoalgebra from its test space");
  roundtrip->add_option("file", a.file)->required();

  auto* metric = app.add_subcommand("metric", "Frame sample tools");
  metric->require_subcommand(1);
  auto* check = metric->add_subcommand("check", "Run the metric invariant battery");
  check->add_option("file", a.file)->required();
  check->add_option("--coords", a.coords, "Coordinate file (default: sidecar)");
  check->add_option("--tol", a.ortho_tol, "Orthogonality angle tolerance (radians)");
  check->add_option("--cap-angle", a.cap_angle, "Cap angular radius in degrees");
  check->add_option("--pairs", a.pairs, "Random test pairs for hyperspace checks");
  check->add_option("--seed", a.seed);

  auto* frames = app.add_subcommand("sample-frames", "Sample random orthonormal frames");
  frames->add_option("-d,--dimension", a.dimension)->check(CLI::Range(2, 64));
  frames->add_option("-n,--count", a.count)->check(CLI::PositiveNumber);
  frames->add_option("--seed", a.seed);
  frames->add_option("-o,--output", a.output, "Output .tsp; coordinates go to the sidecar")->required();
  frames->add_option("--coords", a.coords, "Coordinate file path override");

  auto* extract = app.add_subcommand("extract", "Greedy pairwise-disjoint test extraction");
  extract->add_option("file", a.file)->required();
  extract->add_option("--coords", a.coords);
  extract->add_option("--basis", a.basis, "auto:<count> or a basis file");
  extract->add_option("--delta", a.delta, "Target coverage radius");
  extract->add_option("--radius", a.radius, "Ball radius for auto bases (default delta/4)");
  extract->add_option("--seed", a.seed);
  extract->add_option("--margin", a.margin, "Minimum point distance between selected tests");
  extract->add_option("--resample-factor", a.resample_factor, "Grow the sample by this factor on failure");
  extract->add_option("--tol", a.ortho_tol);
  extract->add_option("-o,--output", a.output, "Write the extracted sub-test-space");

  auto* gen = app.add_subcommand("gen", "Print a corpus test space");
  gen->add_option("name", a.name, "classical-<n>, two-disjoint, glued-pair, triangle, mo2")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    err << app.help();
    return 2;
  }

  Context ctx{in, out, {}};
  int code = 0;
  try {
    if (info->parsed()) code = cmd_info(ctx, a);
    else if (logic->parsed()) code = cmd_logic(ctx, a);
    else if (states->parsed()) code = cmd_states(ctx, a);
    else if (roundtrip->parsed()) code = cmd_oa_roundtrip(ctx, a);
    else if (check->parsed()) code = cmd_metric_check(ctx, a);
    else if (frames->parsed()) code = cmd_sample_frames(ctx, a);
    else if (extract->parsed()) code = cmd_extract(ctx, a);
    else if (gen->parsed()) code = cmd_gen(ctx, a);
  } catch (const Error& e) {
    err << "tsp: " << e.what() << '\n';
    return 2;
  }
  out << ctx.report.render(a.format == "machine" ? Format::machine : Format::plain);
  return code;
}

}  // namespace tsp::cli
