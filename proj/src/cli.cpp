#include "sympert/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sympert/blockops.hpp"
#include "sympert/matrix_io.hpp"
#include "sympert/perturb.hpp"
#include "sympert/williamson.hpp"

namespace sympert::cli {

namespace {

using nlohmann::json;

json index_list(const IndexSet& set) { return set.indices(); }

json clusters_json(const ClusterStructure& cs) {
  auto arr = json::array();
  for (std::size_t i = 0; i < cs.count(); ++i) {
    arr.push_back({{"mu", cs.mus[i]},
                   {"alpha", index_list(cs.alphas[i])},
                   {"beta", index_list(cs.betas[i])},
                   {"gamma", index_list(cs.gammas[i])}});
  }
  return arr;
}

std::string cluster_pair_key(std::size_t i, std::size_t j) { return std::to_string(i + 1) + "," + std::to_string(j + 1); }

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path);
  f << text;
}

void emit_json(const json& doc, const std::string& path, std::ostream& out) { write_text(path, doc.dump(2) + "\n", out); }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> parse_spectrum(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("--spectrum: cannot parse '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("--spectrum: trailing text in '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ParseError("--spectrum: empty list");
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] > 0.0) || !std::isfinite(values[j])) throw ParseError("--spectrum: entries must be positive");
    if (j > 0 && values[j] < values[j - 1]) throw ParseError("--spectrum: entries must be ascending");
  }
  return values;
}

unsigned thread_count() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) threads = std::min(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

struct WilliamsonArgs {
  std::string input;
  std::string out;
  double cluster_tol = kDefaultClusterTol;
};

struct CheckArgs {
  std::string input;
  std::string kind;
  std::optional<double> tol;
};

struct PerturbArgs {
  std::string a;
  std::string h;
  std::string out;
  double cluster_tol = kDefaultClusterTol;
};

struct ScanArgs {
  std::string spectrum;
  std::uint64_t seed = 1;
  double t_min = 1e-6;
  double t_max = 1e-2;
  std::size_t points = 9;
  double conditioning = 4.0;
  double drop_below = kDefaultDropBelow;
  std::string csv;
  std::string json_path;
};

int cmd_williamson(const WilliamsonArgs& args, std::ostream& out) {
  const Matrix a = read_matrix_file(args.input);
  const auto res = williamson_decompose(a, args.cluster_tol);
  const json doc = {{"D", res.D},
                    {"S", matrix_rows_json(res.S)},
                    {"residual_diag", res.residual_diag},
                    {"residual_sympl", res.residual_sympl},
                    {"clusters", clusters_json(res.clusters)}};
  emit_json(doc, args.out, out);
  return kOk;
}

int cmd_check(const CheckArgs& args, std::ostream& out) {
  const Matrix m = read_matrix_file(args.input);
  const double tol = args.tol.value_or(default_tolerance(m.rows()));
  json doc = {{"kind", args.kind}, {"tol", tol}};
  bool pass = false;
  if (args.kind == "symplectic") {
    const auto c = is_symplectic(m, tol);
    pass = c.pass;
    doc["residuals"] = {{"symplecticity", c.residual}};
  } else {
    const auto c = is_orthosymplectic(m, tol);
    pass = c.pass;
    doc["residuals"] = {{"orthogonality", c.orthogonality}, {"symplecticity", c.symplecticity}};
  }
  doc["pass"] = pass;
  emit_json(doc, "", out);
  return pass ? kOk : kCheckFailed;
}

int cmd_perturb(const PerturbArgs& args, std::ostream& out) {
  const Matrix a = read_matrix_file(args.a);
  const Matrix h = read_matrix_file(args.h);
  if (a.rows() != h.rows()) throw ParseError("--a and --h differ in dimension");
  const auto base = williamson_decompose(a, args.cluster_tol);
  const auto perturbed = williamson_decompose(a + h, args.cluster_tol);
  const auto& clusters = base.clusters;

  const auto report = perturbation_report(a, h, base.S, perturbed.S, clusters);
  const auto alignment = align_orthosymplectic(base.S, perturbed.S, clusters);
  const Matrix nearest = nearest_diagonalizer(a, base.S, perturbed.S, clusters);
  const auto correction = symplectic_correction(base.S, perturbed.S, clusters);

  json offdiag = json::object();
  for (const auto& [key, value] : report.offdiag) offdiag[cluster_pair_key(key.first, key.second)] = value;
  const json doc = {{"h_norm", report.h_norm},
                    {"D", base.D},
                    {"D_tilde", perturbed.D},
                    {"clusters", clusters_json(clusters)},
                    {"offdiag", offdiag},
                    {"sym_defect", report.sym_defect},
                    {"antisym_defect", report.antisym_defect},
                    {"ortho_defect", report.ortho_defect},
                    {"sympl_defect", report.sympl_defect},
                    {"align_residual", alignment.residual},
                    {"nearest_residual", spectral_norm(perturbed.S - nearest)},
                    {"Q", matrix_rows_json(alignment.Q)},
                    {"correction_residuals", correction.residuals}};
  emit_json(doc, args.out, out);
  return kOk;
}

int cmd_scan(const ScanArgs& args, std::ostream& out, std::ostream& err) {
  if (!(args.t_min > 0.0) || !(args.t_max > args.t_min)) {
    err << "scan: need 0 < --t-min < --t-max\n";
    return kUsage;
  }
  if (!(args.conditioning >= 1.0)) {
    err << "scan: --conditioning must be >= 1\n";
    return kUsage;
  }
  ScalingConfig config;
  config.spectrum = parse_spectrum(args.spectrum);
  config.seed = args.seed;
  config.ts = logspace(args.t_min, args.t_max, args.points);
  config.conditioning = args.conditioning;
  config.drop_below = args.drop_below;
  config.threads = thread_count();
  const auto study = scaling_study(config);

  const auto& names = scaling_metrics();
  std::string csv = "t";
  for (const auto& name : names) csv += "," + name;
  csv += "\n";
  for (std::size_t k = 0; k < study.ts.size(); ++k) {
    csv += format_double(study.ts[k]);
    for (const auto& name : names) csv += "," + format_double(study.curves.at(name)[k]);
    csv += "\n";
  }

  json slopes = json::object();
  for (const auto& name : names) {
    const auto& s = study.slopes.at(name);
    slopes[name] = s ? json(*s) : json(nullptr);
  }
  json curves = json::object();
  for (const auto& name : names) curves[name] = study.curves.at(name);
  const json doc = {
      {"config",
       {{"spectrum", config.spectrum},
        {"seed", config.seed},
        {"t_min", args.t_min},
        {"t_max", args.t_max},
        {"points", args.points},
        {"conditioning", config.conditioning},
        {"drop_below", config.drop_below}}},
      {"ts", study.ts},
      {"dropped_ts", study.dropped_ts},
      {"slopes", slopes},
      {"curves", curves},
      {"max_q_defect", study.q_defect.empty() ? 0.0 : *std::max_element(study.q_defect.begin(), study.q_defect.end())},
      {"max_n_defect", study.n_defect.empty() ? 0.0 : *std::max_element(study.n_defect.begin(), study.n_defect.end())}};

  if (!args.csv.empty()) write_text(args.csv, csv, out);
  if (!args.json_path.empty() || args.csv.empty()) emit_json(doc, args.json_path, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Williamson normal form and block perturbation diagnostics", "sympert"};
  app.require_subcommand(1);

  WilliamsonArgs wa;
  auto* w = app.add_subcommand("williamson", "Symplectic diagonalization S^T A S = D (+) D");
  w->add_option("--input", wa.input, "MatrixFile with a positive definite matrix")->required();
  w->add_option("--cluster-tol", wa.cluster_tol, "Relative tolerance for grouping equal symplectic eigenvalues")
      ->capture_default_str();
  w->add_option("--out", wa.out, "Output path (default stdout)");

  CheckArgs ca;
  auto* c = app.add_subcommand("check", "Symplectic / orthosymplectic predicate");
  c->add_option("--input", ca.input, "MatrixFile")->required();
  c->add_option("--kind", ca.kind)->required()->check(CLI::IsMember({"symplectic", "orthosymplectic"}));
  c->add_option("--tol", ca.tol, "Tolerance (default 1e-8 * dim)");

  PerturbArgs pa;
  auto* p = app.add_subcommand("perturb", "Block diagnostics of A versus A + H");
  p->set_help_flag("--help", "Print this help message and exit");
  p->add_option("--a", pa.a, "MatrixFile for A")->required();
  p->add_option("--h", pa.h, "MatrixFile for H")->required();
  p->add_option("--out", pa.out, "Output path (default stdout)");
  p->add_option("--cluster-tol", pa.cluster_tol)->capture_default_str();

  ScanArgs sa;
  auto* s = app.add_subcommand("scan", "Residual scaling sweep over t for A + tH");
  s->add_option("--spectrum", sa.spectrum, "Comma-separated ascending symplectic eigenvalues")->required();
  s->add_option("--seed", sa.seed)->capture_default_str();
  s->add_option("--t-min", sa.t_min)->capture_default_str();
  s->add_option("--t-max", sa.t_max)->capture_default_str();
  s->add_option("--points", sa.points)->capture_default_str()->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
  s->add_option("--conditioning", sa.conditioning)->capture_default_str();
  s->add_option("--drop-below", sa.drop_below)->capture_default_str();
  s->add_option("--csv", sa.csv, "CSV output path");
  s->add_option("--json", sa.json_path, "JSON summary path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*w) return cmd_williamson(wa, out);
    if (*c) return cmd_check(ca, out);
    if (*p) return cmd_perturb(pa, out);
    if (*s) return cmd_scan(sa, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kInsufficientData;
  }
  return kUsage;
}

}  // namespace sympert::cli
