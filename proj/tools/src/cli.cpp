#include "rlcli/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "ritzlag/errors.hpp"

namespace rlcli {

using nlohmann::json;
using namespace ritzlag;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open " + path + " for writing");
  file << content;
  if (!file) throw std::ios_base::failure("write failed for " + path);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stoi(item));
  }
  return values;
}

json quad_to_json(const QuadratureOverrides& q) {
  json j = json::object();
  if (q.panels_1d) j["panels_1d"] = *q.panels_1d;
  if (q.disk_radial) j["disk_radial"] = *q.disk_radial;
  if (q.disk_angular) j["disk_angular"] = *q.disk_angular;
  if (q.circle_segment_order) j["circle_segment_order"] = *q.circle_segment_order;
  if (q.edge_panels) j["edge_panels"] = *q.edge_panels;
  return j;
}

QuadratureOverrides quad_from_json(const json& j) {
  QuadratureOverrides q;
  if (j.contains("panels_1d")) q.panels_1d = j["panels_1d"].get<int>();
  if (j.contains("disk_radial")) q.disk_radial = j["disk_radial"].get<int>();
  if (j.contains("disk_angular")) q.disk_angular = j["disk_angular"].get<int>();
  if (j.contains("circle_segment_order"))
    q.circle_segment_order = j["circle_segment_order"].get<int>();
  if (j.contains("edge_panels")) q.edge_panels = j["edge_panels"].get<int>();
  return q;
}

}  // namespace

OutputFormat format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "markdown" || name == "md") return OutputFormat::markdown;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format: " + name);
}

const char* to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::markdown: return "markdown";
    case OutputFormat::json: return "json";
  }
  return "?";
}

json to_json(const RunConfig& config) {
  return json{{"problem", ritzlag::to_string(config.problem)},
              {"n", config.n_values},
              {"s", config.s_values},
              {"basis", ritzlag::to_string(config.basis)},
              {"nu", config.nu},
              {"quad", quad_to_json(config.quad)},
              {"format", to_string(config.format)},
              {"out", config.out_path},
              {"seed", config.seed}};
}

RunConfig run_config_from_json(const json& j) {
  RunConfig config;
  config.problem = problem_from_string(j.at("problem").get<std::string>());
  config.n_values = j.at("n").get<std::vector<int>>();
  config.s_values = j.at("s").get<std::vector<int>>();
  config.basis = basis_variant_from_string(j.at("basis").get<std::string>());
  config.nu = j.at("nu").get<double>();
  config.quad = quad_from_json(j.at("quad"));
  config.format = format_from_string(j.at("format").get<std::string>());
  config.out_path = j.at("out").get<std::string>();
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

const std::vector<Preset>& ExperimentRegistry::presets() {
  static const std::vector<Preset> presets = [] {
    std::vector<Preset> p;
    const auto rows = [](ProblemId id, BasisVariant basis,
                         std::initializer_list<std::pair<int, int>> ns) {
      std::vector<ProblemConfig> out;
      for (auto [n, s] : ns) out.push_back({id, n, s, basis, 0.3, {}});
      return out;
    };
    p.push_back({"table1", "disk membrane errors, rows (3,2) (4,3) (5,4)",
                 rows(ProblemId::P4, BasisVariant::plain, {{3, 2}, {4, 3}, {5, 4}})});
    p.push_back({"table2", "plate with plain cosine products vs clamped reference",
                 rows(ProblemId::P5, BasisVariant::plain, {{4, 2}, {6, 3}, {8, 4}, {10, 5}})});
    p.push_back({"table3", "plate with completed cosine products vs SS series",
                 rows(ProblemId::P5, BasisVariant::augmented, {{5, 2}, {6, 3}, {8, 4}, {10, 5}})});
    p.push_back({"frequencies", "plate eigenfrequencies at (10, 5) vs exact values",
                 rows(ProblemId::P6, BasisVariant::augmented, {{10, 5}})});
    p.push_back({"tau-demo", "tau-method weight choices and their verdicts", {}});
    p.push_back({"completeness-demo", "best-approximation residuals in W21/W22", {}});
    p.push_back({"monotonicity-demo", "energy vs N (interval) and vs s (disk)", {}});
    return p;
  }();
  return presets;
}

const Preset* ExperimentRegistry::find(const std::string& name) {
  for (const Preset& p : presets())
    if (p.name == name) return &p;
  return nullptr;
}

namespace {

// ---------------------------------------------------------------------------
// Artifact writers. Data files are byte-stable: the wall_ms column is zeroed
// and measured timings go to the provenance sidecar and console summary.
// ---------------------------------------------------------------------------

std::string static_rows_csv(const std::vector<ErrorReport>& rows) {
  std::string out = "problem,N,s,basis,nu,central_err_pct,boundary_err_pct,sup_err,energy,wall_ms\n";
  for (const ErrorReport& r : rows) {
    out += ritzlag::to_string(r.id);
    out += ',' + std::to_string(r.n) + ',' + std::to_string(r.s) + ',';
    out += ritzlag::to_string(r.basis);
    out += ',' + fmt(r.nu) + ',' + fmt(r.central_err_pct) + ',' + fmt(r.boundary_err_pct) + ',' +
           fmt(r.sup_err) + ',' + fmt(r.energy) + ",0\n";
  }
  return out;
}

std::string static_rows_markdown(const std::vector<ErrorReport>& rows) {
  std::string out = "| N | s | Central Error % | Boundary Error % | sup error | J |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const ErrorReport& r : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "| %d | %d | %.4g | %.4g | %.4g | %.8g |\n", r.n, r.s,
                  r.central_err_pct, r.boundary_err_pct, r.sup_err, r.energy);
    out += line;
  }
  return out;
}

json static_rows_json(const std::vector<ErrorReport>& rows) {
  json arr = json::array();
  for (const ErrorReport& r : rows) {
    json item{{"problem", ritzlag::to_string(r.id)},
              {"N", r.n},
              {"s", r.s},
              {"basis", ritzlag::to_string(r.basis)},
              {"nu", r.nu},
              {"central_err_pct", r.central_err_pct},
              {"boundary_err_pct", r.boundary_err_pct},
              {"sup_err", r.sup_err},
              {"energy", r.energy},
              {"n_total", r.n_total},
              {"s_total", r.s_total},
              {"wall_ms", 0}};
    item["coefficients"] = std::vector<double>(
        r.solution.coefficients.data(), r.solution.coefficients.data() + r.solution.coefficients.size());
    item["multipliers"] = std::vector<double>(
        r.solution.multipliers.data(), r.solution.multipliers.data() + r.solution.multipliers.size());
    arr.push_back(std::move(item));
  }
  return arr;
}

std::string frequencies_csv(const FrequencyReport& report) {
  std::string out = "m,n,omega_est,omega_exact,rel_err\n";
  for (const FrequencyEntry& e : report.table) {
    out += std::to_string(e.m) + ',' + std::to_string(e.n) + ',' + fmt(e.omega_est) + ',' +
           fmt(e.omega_exact) + ',' + fmt(e.rel_err) + '\n';
  }
  return out;
}

std::string frequencies_markdown(const FrequencyReport& report) {
  std::string out = "Estimated omega_mn (rows m = 1..3, columns n = 1..3):\n\n";
  const auto matrix = [&](bool exact) {
    std::string block;
    for (int m = 1; m <= 3; ++m) {
      block += '|';
      for (int n = 1; n <= 3; ++n) {
        const FrequencyEntry& e = report.table[static_cast<std::size_t>((m - 1) * 3 + (n - 1))];
        char cell[48];
        std::snprintf(cell, sizeof cell, " %.5f |", exact ? e.omega_exact : e.omega_est);
        block += cell;
      }
      block += '\n';
    }
    return block;
  };
  out += matrix(false);
  out += "\nExact omega_mn:\n\n";
  out += matrix(true);
  return out;
}

json frequencies_json(const FrequencyReport& report) {
  json entries = json::array();
  for (const FrequencyEntry& e : report.table)
    entries.push_back({{"m", e.m},
                       {"n", e.n},
                       {"omega_est", e.omega_est},
                       {"omega_exact", e.omega_exact},
                       {"rel_err", e.rel_err}});
  json j{{"N", report.n}, {"s", report.s}, {"nu", report.nu}, {"entries", std::move(entries)}};
  j["eigenvalues"] = std::vector<double>(
      report.modes.eigenvalues.data(),
      report.modes.eigenvalues.data() + std::min<Eigen::Index>(report.modes.eigenvalues.size(), 12));
  return j;
}

struct DemoTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string demo_csv(const DemoTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out += table.header[i] + (i + 1 < table.header.size() ? "," : "\n");
  for (const auto& row : table.rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      out += row[i] + (i + 1 < row.size() ? "," : "\n");
  return out;
}

std::string demo_markdown(const DemoTable& table) {
  std::string out = "|";
  for (const auto& h : table.header) out += ' ' + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out += "---|";
  out += '\n';
  for (const auto& row : table.rows) {
    out += '|';
    for (const auto& cell : row) out += ' ' + cell + " |";
    out += '\n';
  }
  return out;
}

json demo_json(const DemoTable& table) {
  json arr = json::array();
  for (const auto& row : table.rows) {
    json item;
    for (std::size_t i = 0; i < table.header.size(); ++i) item[table.header[i]] = row[i];
    arr.push_back(std::move(item));
  }
  return arr;
}

std::string render_demo(const DemoTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return demo_csv(table);
    case OutputFormat::markdown: return demo_markdown(table);
    case OutputFormat::json: return demo_json(table).dump(2) + "\n";
  }
  return {};
}

DemoTable tau_demo_table() {
  DemoTable table;
  table.header = {"case", "verdict", "rank", "rank_augmented", "lsq_residual"};
  const Basis1D basis = Basis1D::cosine(7, std::numbers::pi);
  const QuadratureRule1D quad = composite_gauss(10, 8, 0.0, std::numbers::pi);
  const auto f_one = [](double) { return 1.0; };
  const std::vector<EndpointFunctional> bcs{{0.0, 0}, {std::numbers::pi, 0}};

  const auto add_case = [&table](const std::string& name, const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& b) {
    const ConsistencyVerdict v = classify_square_system(a, b);
    table.rows.push_back({name, ritzlag::to_string(v.tag), std::to_string(v.rank_a),
                          std::to_string(v.rank_augmented), fmt_short(v.lsq_residual)});
  };
  {
    auto [a, b] = tau_system(basis, {0, 1, 2, 3, 4}, bcs, f_one, quad);
    add_case("tau weights m=0..4", a, b);
  }
  {
    auto [a, b] = tau_system(basis, {2, 3, 4, 5, 6}, bcs, f_one, quad);
    add_case("tau weights m=2..6", a, b);
  }
  {
    auto [a, b] = tau_system(basis, {1, 2, 3, 4, 5}, bcs, f_one, quad);
    add_case("tau weights m=1..5", a, b);
  }
  {
    auto [a, b] = boundary_term_system(basis, f_one, quad);
    add_case("boundary-term Galerkin", a, b);
  }
  return table;
}

DemoTable completeness_demo_table() {
  DemoTable table;
  table.header = {"target", "basis", "product", "N", "residual"};
  const auto x2 = [](double x) { return Eval1D{x * x, 2.0 * x, 2.0}; };
  const auto cos3 = [](double x) { return Eval1D{std::cos(3 * x), -3 * std::sin(3 * x), -9 * std::cos(3 * x)}; };
  const Basis1D cosine = Basis1D::cosine(40, std::numbers::pi);
  const Basis1D augmented = Basis1D::augmented_cosine(40, std::numbers::pi);
  for (int n : {5, 10, 20, 40}) {
    const auto r = sobolev_residual(x2, cosine, SobolevProduct::w22, static_cast<std::size_t>(n));
    table.rows.push_back({"x^2", "cosine", "W22", std::to_string(n), fmt_short(r.residual)});
  }
  for (int n : {5, 10, 20, 40}) {
    const auto r = sobolev_residual(x2, cosine, SobolevProduct::w21, static_cast<std::size_t>(n));
    table.rows.push_back({"x^2", "cosine", "W21", std::to_string(n), fmt_short(r.residual)});
  }
  {
    const auto r = sobolev_residual(x2, augmented, SobolevProduct::w22, 10);
    table.rows.push_back({"x^2", "augmented", "W22", "10", fmt_short(r.residual)});
  }
  {
    const auto r = sobolev_residual(cos3, cosine, SobolevProduct::w22, 10);
    table.rows.push_back({"cos(3x)", "cosine", "W22", "10", fmt_short(r.residual)});
  }
  return table;
}

DemoTable monotonicity_demo_table() {
  DemoTable table;
  table.header = {"problem", "parameter", "value", "energy"};
  for (int n : {5, 10, 20, 40, 80}) {
    ProblemConfig c{ProblemId::P1, n, 0, BasisVariant::plain, 0.3, {}};
    const ConstrainedSystem sys = build_problem_system(c);
    const TrialSolution sol = solve_saddle(sys);
    table.rows.push_back({"P1", "N", std::to_string(n), fmt(energy_value(sol, sys))});
  }
  for (int s : {2, 3, 4, 5}) {
    ProblemConfig c{ProblemId::P4, 6, s, BasisVariant::plain, 0.3, {}};
    const ConstrainedSystem sys = build_problem_system(c);
    const TrialSolution sol = solve_saddle(sys);
    table.rows.push_back({"P4", "s", std::to_string(s), fmt(energy_value(sol, sys))});
  }
  return table;
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
  return buf;
}

void write_sidecar(const std::string& out_path, const json& config_echo,
                   const std::vector<double>& timings_ms) {
  json side{{"created_at", iso_timestamp()},
            {"tool", "ritzlag 0.1.0"},
            {"config", config_echo},
            {"timings_ms", timings_ms}};
  write_file(out_path + ".provenance.json", side.dump(2) + "\n");
}

void emit(const std::string& artifact, const RunConfig& config,
          const std::vector<double>& timings) {
  if (config.out_path.empty()) {
    std::cout << artifact;
    return;
  }
  write_file(config.out_path, artifact);
  write_sidecar(config.out_path, to_json(config), timings);
  std::cout << "wrote " << config.out_path << "\n";
}

int run_static_rows(const RunConfig& config, const std::vector<ProblemConfig>& pending) {
  std::vector<ErrorReport> rows;
  std::vector<double> timings;
  for (const ProblemConfig& pc : pending) {
    try {
      rows.push_back(run_problem(pc));
    } catch (const DegenerateConfigError& e) {
      if (pending.size() == 1) throw;
      std::cerr << "skipping N=" << pc.n << " s=" << pc.s << ": " << e.what() << "\n";
      continue;
    }
    const ErrorReport& r = rows.back();
    timings.push_back(r.wall_ms);
    std::fprintf(stderr, "%s N=%d s=%d: central %+.4f%% boundary %+.4f%% sup %.3g J %.8g (%.0f ms)\n",
                 ritzlag::to_string(r.id), r.n, r.s, r.central_err_pct, r.boundary_err_pct,
                 r.sup_err, r.energy, r.wall_ms);
  }
  if (rows.empty()) {
    std::cerr << "no non-degenerate (N, s) pairs to run\n";
    return kExitDegenerate;
  }
  std::string artifact;
  switch (config.format) {
    case OutputFormat::csv: artifact = static_rows_csv(rows); break;
    case OutputFormat::markdown: artifact = static_rows_markdown(rows); break;
    case OutputFormat::json: artifact = static_rows_json(rows).dump(2) + "\n"; break;
  }
  emit(artifact, config, timings);
  return 0;
}

int run_frequencies(const RunConfig& config, const ProblemConfig& pc) {
  const FrequencyReport report = run_modes(pc);
  std::fprintf(stderr, "P6 N=%d s=%d: omega_11 %.5f (exact %.5f) (%.0f ms)\n", report.n, report.s,
               report.table[0].omega_est, report.table[0].omega_exact, report.wall_ms);
  std::string artifact;
  switch (config.format) {
    case OutputFormat::csv: artifact = frequencies_csv(report); break;
    case OutputFormat::markdown: artifact = frequencies_markdown(report); break;
    case OutputFormat::json: artifact = frequencies_json(report).dump(2) + "\n"; break;
  }
  emit(artifact, config, {report.wall_ms});
  return 0;
}

int dispatch(const RunConfig& config, const std::string& preset_name) {
  if (!preset_name.empty()) {
    const Preset* preset = ExperimentRegistry::find(preset_name);
    if (!preset) {
      std::cerr << "unknown preset: " << preset_name << "\n";
      return kExitUsage;
    }
    if (preset->name == "tau-demo") {
      emit(render_demo(tau_demo_table(), config.format), config, {});
      return 0;
    }
    if (preset->name == "completeness-demo") {
      emit(render_demo(completeness_demo_table(), config.format), config, {});
      return 0;
    }
    if (preset->name == "monotonicity-demo") {
      emit(render_demo(monotonicity_demo_table(), config.format), config, {});
      return 0;
    }
    std::vector<ProblemConfig> pending = preset->rows;
    for (ProblemConfig& pc : pending) {
      pc.nu = config.nu;
      pc.quad = config.quad;
    }
    if (preset->name == "frequencies") return run_frequencies(config, pending.front());
    return run_static_rows(config, pending);
  }

  std::vector<ProblemConfig> pending;
  const std::vector<int> s_list = config.s_values.empty() ? std::vector<int>{0} : config.s_values;
  for (int n : config.n_values)
    for (int s : s_list)
      pending.push_back({config.problem, n, s, config.basis, config.nu, config.quad});
  if (pending.empty()) {
    std::cerr << "no (N, s) pairs requested\n";
    return kExitUsage;
  }
  if (config.problem == ProblemId::P6) {
    if (pending.size() != 1) {
      std::cerr << "P6 runs one (N, s) configuration at a time\n";
      return kExitUsage;
    }
    return run_frequencies(config, pending.front());
  }
  return run_static_rows(config, pending);
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{"Ritz method with Lagrange-multiplier boundary enforcement: experiment driver"};
  app.get_formatter()->column_width(34);

  std::string problem = "P1";
  std::string n_text = "9";
  std::string s_text;
  std::string basis = "auto";
  std::string format = "csv";
  std::string preset;
  std::string dump_reference;
  RunConfig config;

  app.add_option("--problem", problem, "problem id: P1..P6");
  app.add_option("--n", n_text, "trial count N, or comma list for a sweep");
  app.add_option("--s", s_text, "boundary partition s, or comma list (P4..P6)");
  app.add_option("--basis", basis, "plain | augmented | auto");
  app.add_option("--nu", config.nu, "Poisson ratio for the plate problems")->check(CLI::Range(0.0, 0.999));
  app.add_option("--format", format, "csv | markdown | json");
  app.add_option("--out", config.out_path, "output path (stdout when omitted)");
  app.add_option("--preset", preset,
                 "table1 | table2 | table3 | frequencies | tau-demo | completeness-demo | "
                 "monotonicity-demo");
  app.add_option("--seed", config.seed, "carried in configs; all computations are deterministic");
  int quad_panels = 0, disk_radial = 0, disk_angular = 0, circle_order = 0, edge_panels = 0;
  app.add_option("--quad-panels", quad_panels, "composite panels for 1D/square assembly");
  app.add_option("--disk-radial", disk_radial, "radial Gauss order on the disk");
  app.add_option("--disk-angular", disk_angular, "angular point count on the disk");
  app.add_option("--circle-order", circle_order, "Gauss order per circle arc");
  app.add_option("--edge-panels", edge_panels, "composite panels per square edge");
  app.add_option("--dump-reference", dump_reference, "write the problem's reference grid as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    config.problem = problem_from_string(problem);
    config.n_values = parse_int_list(n_text);
    config.s_values = s_text.empty() ? std::vector<int>{} : parse_int_list(s_text);
    config.format = format_from_string(format);
    if (basis == "auto")
      config.basis = config.problem == ProblemId::P6 ? BasisVariant::augmented : BasisVariant::plain;
    else
      config.basis = basis_variant_from_string(basis);
    if (quad_panels > 0) config.quad.panels_1d = quad_panels;
    if (quad_panels > 0) config.quad.edge_panels = quad_panels;
    if (disk_radial > 0) config.quad.disk_radial = disk_radial;
    if (disk_angular > 0) config.quad.disk_angular = disk_angular;
    if (circle_order > 0) config.quad.circle_segment_order = circle_order;
    if (edge_panels > 0) config.quad.edge_panels = edge_panels;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!dump_reference.empty()) {
      const ProblemConfig pc{config.problem, config.n_values.front(),
                             config.s_values.empty() ? 0 : config.s_values.front(), config.basis,
                             config.nu, config.quad};
      const SampleDomain domain = config.problem == ProblemId::P4 ? SampleDomain::unit_disk
                                  : config.problem == ProblemId::P5 ? SampleDomain::unit_square
                                                                    : SampleDomain::interval;
      write_reference_grid_csv(reference_for(pc), domain, dump_reference);
      std::cout << "wrote " << dump_reference << "\n";
      return 0;
    }
    return dispatch(config, preset);
  } catch (const DegenerateConfigError& e) {
    std::cerr << "degenerate configuration: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ConstraintRankError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const SingularSystemError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const MassDegenerateError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const MetricError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace rlcli
