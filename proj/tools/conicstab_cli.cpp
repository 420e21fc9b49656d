#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "conicstab/determinantal.hpp"
#include "conicstab/io.hpp"
#include "conicstab/stability.hpp"

using namespace conicstab;
using nlohmann::json;

namespace {

// Thrown for anything the user got wrong; maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t samples = 10000;
  std::uint64_t seed = SamplingOptions{}.seed;
  int threads = 0;
  std::string output = "json";
  std::vector<std::string> tol_overrides;
  bool verify = false;

  SamplingOptions sampling() const {
    SamplingOptions o;
    o.samples = samples;
    o.seed = seed;
    o.threads = threads;
    return o;
  }
};

void add_run_options(CLI::App* app, RunConfig& cfg, bool sampling = true) {
  if (sampling) {
    app->add_option("--samples", cfg.samples, "Sampling budget")->capture_default_str();
    app->add_option("--seed", cfg.seed, "Base seed of the per-draw streams")->capture_default_str();
    app->add_option("--threads", cfg.threads, "Sampling threads (1 = serial kernel, 0 = OpenMP default)")
        ->capture_default_str();
  }
  app->add_option("--tol", cfg.tol_overrides, "Tolerance override NAME=VALUE (repeatable)");
  app->add_option("--output", cfg.output, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
}

ToleranceProfile tolerance_from(const RunConfig& cfg) {
  ToleranceProfile t;
  const std::map<std::string, double*> fields{
      {"hermitian_tol", &t.hermitian_tol},     {"eig_tol", &t.eig_tol},
      {"pivot_tol", &t.pivot_tol},             {"psd_tol", &t.psd_tol},
      {"coeff_zero_tol", &t.coeff_zero_tol},   {"root_tol", &t.root_tol},
      {"root_cluster_tol", &t.root_cluster_tol}, {"root_merge_tol", &t.root_merge_tol},
      {"stability_tol", &t.stability_tol},     {"real_root_tol", &t.real_root_tol},
      {"sign_tol", &t.sign_tol},               {"interior_tol", &t.interior_tol},
      {"interior_delta", &t.interior_delta},   {"residual_tol", &t.residual_tol},
      {"witness_margin", &t.witness_margin}};
  for (const auto& item : cfg.tol_overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--tol expects NAME=VALUE, got '" + item + "'");
    const auto it = fields.find(item.substr(0, eq));
    if (it == fields.end()) throw InputError("unknown tolerance '" + item.substr(0, eq) + "'");
    try {
      *it->second = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("bad tolerance value in '" + item + "'");
    }
  }
  return t;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Variable names for a cone of dimension k.dim(): explicit --vars, the
// matrix names for a PSD cone, z1..zN when the text only uses such names,
// otherwise the names found in the text.
std::vector<std::string> variables_for(const std::string& text, const Cone& k, const std::string& vars_flag) {
  if (!vars_flag.empty()) return split_names(vars_flag);
  if (const auto* p = std::get_if<PsdCone>(&k.variant())) return MatrixVarIndex(p->n).names();
  std::vector<std::string> numbered;
  for (std::size_t i = 1; i <= k.dim(); ++i) numbered.push_back("z" + std::to_string(i));
  const auto found = collect_variables(text);
  for (const auto& v : found)
    if (std::find(numbered.begin(), numbered.end(), v) == numbered.end()) return found;
  return numbered;
}

// "@file.json" holds a polynomial in JSON form, "@file" anything else an
// expression; bare text is an expression.
MultiPoly load_poly(const std::string& src, const Cone& k, const std::string& vars_flag, const ToleranceProfile& tol) {
  std::string text = src;
  if (!src.empty() && src[0] == '@') {
    const std::filesystem::path p = src.substr(1);
    if (p.extension() == ".json") {
      auto f = io::poly_from_json(io::read_json_file(p), tol);
      if (f.nvars() != k.dim())
        throw InputError("polynomial has " + std::to_string(f.nvars()) + " variables, cone dimension is " +
                         std::to_string(k.dim()));
      return f;
    }
    text = slurp(p);
  }
  const auto vars = variables_for(text, k, vars_flag);
  if (vars.size() != k.dim())
    throw InputError("expected " + std::to_string(k.dim()) + " variables for the cone, found " +
                     std::to_string(vars.size()) + " (use --vars)");
  return parse(text, vars, tol);
}

std::string witness_text(const std::vector<Complex>& w) {
  std::ostringstream s;
  s.precision(17);
  for (std::size_t i = 0; i < w.size(); ++i) s << (i ? " " : "") << w[i].real() << (w[i].imag() < 0 ? "" : "+")
                                               << w[i].imag() << "i";
  return s.str();
}

void emit_verdict(const Verdict& v, const RunConfig& cfg, json extra) {
  if (cfg.output == "json") {
    json j = io::to_json(v);
    for (auto& [key, value] : extra.items()) j[key] = value;
    std::cout << j.dump() << "\n";
  } else if (cfg.output == "csv") {
    std::cout << "status,samples,seed,draw,residual,witness\n"
              << to_string(v.status) << "," << v.samples << "," << v.seed << ","
              << (v.draw ? std::to_string(*v.draw) : "") << "," << v.residual << ","
              << (v.witness ? witness_text(*v.witness) : "") << "\n";
  } else {
    std::cout << "status:   " << to_string(v.status) << "\n"
              << "seed:     " << v.seed << "\n"
              << "samples:  " << v.samples << "\n";
    if (v.certificate) std::cout << "note:     " << *v.certificate << "\n";
    if (v.witness) std::cout << "witness:  " << witness_text(*v.witness) << "\nresidual: " << v.residual << "\n";
    if (extra.contains("verified")) std::cout << "verified: " << extra["verified"].dump() << "\n";
  }
}

int run_stab(const std::string& expr, const std::string& file, const std::string& cone_spec,
             const std::string& vars_flag, const RunConfig& cfg) {
  const auto tol = tolerance_from(cfg);
  const Cone k = io::parse_cone_spec(cone_spec);
  const auto f = load_poly(file.empty() ? expr : "@" + file, k, vars_flag, tol);
  const Verdict v = k_stability(f, k, cfg.sampling(), tol);
  json extra{{"polynomial", to_string(f)}, {"cone", cone_spec}};
  bool verified = true;
  if (cfg.verify && v.witness) {
    verified = validate_witness(f, k, *v.witness, tol);
    extra["verified"] = verified;
  }
  emit_verdict(v, cfg, extra);
  return v.unstable() || !verified ? 1 : 0;
}

bool proportional(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero() || g.is_zero()) return true;
  const auto& [e, c] = *g.terms().begin();
  const Complex r = f.coefficient(e) / c;
  return (f + (-r) * g).is_zero();
}

int run_hko(const std::string& fsrc, const std::string& gsrc, const std::string& cone_spec,
            const std::string& vars_flag, std::size_t wronskian_points, const RunConfig& cfg) {
  const auto tol = tolerance_from(cfg);
  const Cone k = io::parse_cone_spec(cone_spec);
  const auto f = load_poly(fsrc, k, vars_flag, tol), g = load_poly(gsrc, k, vars_flag, tol);
  if (!is_real(f) || !is_real(g)) throw InputError("hko expects real polynomials f and g");
  const auto opts = cfg.sampling();
  const auto pencil = pencil_hko_check(f, g, k, default_pencil_grid(), opts, tol);
  const auto wfg = wronskian_certificate(f, g, k, wronskian_points, opts, 16, tol);
  const auto wgf = wronskian_certificate(g, f, k, wronskian_points, opts, 16, tol);

  std::size_t unstable_members = 0, zero_members = 0;
  for (const auto& m : pencil.members) {
    unstable_members += m.verdict.unstable();
    zero_members += m.zero;
  }
  // A passing Wronskian on a clean side must not
  // coexist with an unstable pencil.
  const bool wronskian_ok =
      pencil.pencil_clean || !((wfg.passed && pencil.g_plus_if.clean()) || (wgf.passed && pencil.f_plus_ig.clean()));
  const bool consistent = pencil.consistent && wronskian_ok;
  std::string classification = "inconsistent";
  if (consistent) {
    if (proportional(f, g))
      classification = "consistent-degenerate";
    else
      classification = pencil.pencil_clean ? "consistent-positive" : "consistent-negative";
  }

  if (cfg.output == "text") {
    std::cout << "classification: " << classification << "\n"
              << "pencil:         " << pencil.members.size() << " members, " << unstable_members << " falsified, "
              << zero_members << " zero\n"
              << "g+if:           " << to_string(pencil.g_plus_if.status) << "\n"
              << "f+ig:           " << to_string(pencil.f_plus_ig.status) << "\n"
              << "W(f,g) <= 0:    " << (wfg.passed ? "passed" : "disproved") << "\n"
              << "W(g,f) <= 0:    " << (wgf.passed ? "passed" : "disproved") << "\n"
              << "seed:           " << cfg.seed << "\n";
  } else if (cfg.output == "csv") {
    std::cout << "classification,pencil_members,pencil_falsified,g_plus_if,f_plus_ig,wronskian_fg,wronskian_gf,seed\n"
              << classification << "," << pencil.members.size() << "," << unstable_members << ","
              << to_string(pencil.g_plus_if.status) << "," << to_string(pencil.f_plus_ig.status) << ","
              << wfg.passed << "," << wgf.passed << "," << cfg.seed << "\n";
  } else {
    json members = json::array();
    for (const auto& m : pencil.members)
      members.push_back({{"lambda", m.lambda}, {"mu", m.mu}, {"zero", m.zero}, {"status", to_string(m.verdict.status)}});
    auto wjson = [](const WronskianReport& w) {
      json dirs = json::array();
      for (const auto& d : w.directions) {
        json e{{"v", d.v}, {"max_value", d.max_value}};
        if (d.disproof) e["disproof"] = *d.disproof;
        dirs.push_back(std::move(e));
      }
      return json{{"passed", w.passed}, {"from_generators", w.from_generators}, {"directions", std::move(dirs)}};
    };
    const json out{{"classification", classification},
                   {"consistent", consistent},
                   {"f", to_string(f)},
                   {"g", to_string(g)},
                   {"cone", cone_spec},
                   {"seed", cfg.seed},
                   {"samples", cfg.samples},
                   {"pencil_clean", pencil.pencil_clean},
                   {"pencil", members},
                   {"g_plus_if", io::to_json(pencil.g_plus_if)},
                   {"f_plus_ig", io::to_json(pencil.f_plus_ig)},
                   {"wronskian_fg", wjson(wfg)},
                   {"wronskian_gf", wjson(wgf)}};
    std::cout << out.dump() << "\n";
  }
  return consistent ? 0 : 1;
}

int run_detstab(const std::string& a_file, const std::string& b_file, const RunConfig& cfg) {
  const auto tol = tolerance_from(cfg);
  const json aj = io::read_json_file(a_file);
  const BlockMatrix a = io::block_matrix_from_json(aj);
  DenseMatrix b(a.block_rows(), a.block_rows());
  if (!b_file.empty())
    b = io::matrix_from_json(io::read_json_file(b_file));
  else if (aj.contains("b"))
    b = io::matrix_from_json(aj.at("b"));
  const auto cert = thm54_certify(a, b, tol, ExpansionCap{}, cfg.seed);

  json out{{"status", to_string(cert.verdict.status)},
           {"lambda_min", cert.lambda_min},
           {"eigenvalues", cert.eigenvalues},
           {"b_hermitian_residual", cert.b_hermitian_residual},
           {"seed", cfg.seed}};
  if (cert.verdict.certificate) out["certificate"] = *cert.verdict.certificate;
  if (cert.polynomial) out["polynomial"] = to_string(*cert.polynomial);
  int code = 0;
  if (cert.verdict.status == VerdictStatus::not_certified && cert.polynomial) {
    // The criterion is only sufficient; report what sampling says.
    const auto v = falsify_k_stability(*cert.polynomial, Cone::psd(a.grid_rows()), cfg.sampling(), tol);
    out["falsifier"] = io::to_json(v);
    if (v.unstable()) code = 1;
  }
  if (cfg.output == "json") {
    std::cout << out.dump() << "\n";
  } else if (cfg.output == "csv") {
    std::cout << "status,lambda_min,b_hermitian_residual,falsifier,polynomial\n"
              << out["status"].get<std::string>() << "," << cert.lambda_min << "," << cert.b_hermitian_residual << ","
              << (out.contains("falsifier") ? out["falsifier"]["status"].get<std::string>() : "") << ",\""
              << (cert.polynomial ? to_string(*cert.polynomial) : "") << "\"\n";
  } else {
    std::cout << "status:     " << out["status"].get<std::string>() << "\n"
              << "lambda_min: " << cert.lambda_min << "\n";
    if (cert.polynomial) std::cout << "polynomial: " << to_string(*cert.polynomial) << "\n";
    if (out.contains("falsifier"))
      std::cout << "falsifier:  " << out["falsifier"]["status"].get<std::string>() << " at "
                << out["falsifier"]["samples"] << " samples\n";
  }
  return code;
}

int run_improj(const std::string& expr, const std::string& file, const std::string& vars_flag, std::size_t points,
               const std::vector<double>& box, const RunConfig& cfg) {
  const auto tol = tolerance_from(cfg);
  std::string text = expr;
  MultiPoly f;
  if (!file.empty() && std::filesystem::path(file).extension() == ".json") {
    f = io::poly_from_json(io::read_json_file(file), tol);
  } else {
    if (!file.empty()) text = slurp(file);
    const auto vars = vars_flag.empty() ? collect_variables(text) : split_names(vars_flag);
    if (vars.empty()) throw InputError("improj needs a non-constant polynomial");
    f = parse(text, vars, tol);
  }
  if (box.size() != 2 || !(box[0] < box[1])) throw InputError("--box expects LO,HI with LO < HI");
  const std::vector<std::pair<double, double>> bounds(f.nvars(), {box[0], box[1]});
  const auto cloud = imaginary_projection_sample(f, points, bounds, cfg.seed, tol);
  if (cfg.output == "json") {
    std::cout << json{{"vars", f.var_names()}, {"seed", cfg.seed}, {"points", cloud}}.dump() << "\n";
    return 0;
  }
  std::cout.precision(17);
  const auto& names = f.var_names();
  for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? (cfg.output == "csv" ? "," : " ") : "") << "y_" << names[i];
  std::cout << "\n";
  for (const auto& y : cloud) {
    for (std::size_t i = 0; i < y.size(); ++i) std::cout << (i ? (cfg.output == "csv" ? "," : " ") : "") << y[i];
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conic stability of multivariate polynomials"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  std::string expr, file, cone = "orthant:1", vars;

  auto* stab = app.add_subcommand("stab", "Decide or falsify K-stability of one polynomial");
  auto* src = stab->add_option_group("source");
  src->add_option("-e,--expr", expr, "Polynomial expression");
  src->add_option("-f,--file", file, "Polynomial file (JSON or expression text)")->check(CLI::ExistingFile);
  src->require_option(1);
  stab->add_option("--cone", cone, "Cone: orthant:n, psd:n, poly:@file.json, prod:spec,spec")->required();
  stab->add_option("--vars", vars, "Comma-separated variable names");
  stab->add_flag("--verify", cfg.verify, "Re-validate the witness against the input");
  add_run_options(stab, cfg);

  std::string fsrc, gsrc;
  std::size_t wpoints = 500;
  auto* hko = app.add_subcommand("hko", "Pencil, g+if/f+ig and Wronskian consistency for real f, g");
  hko->add_option("f", fsrc, "f as an expression or @file")->required();
  hko->add_option("g", gsrc, "g as an expression or @file")->required();
  hko->add_option("--cone", cone, "Cone descriptor")->required();
  hko->add_option("--vars", vars, "Comma-separated variable names");
  hko->add_option("--wronskian-points", wpoints, "Sample points per Wronskian direction")->capture_default_str();
  add_run_options(hko, cfg);

  std::string a_file, b_file;
  auto* det = app.add_subcommand("detstab", "Block-matrix certificate for det(sum A_ij z_ij + B)");
  det->add_option("-f,--file", a_file, "Block matrix JSON for A")->required()->check(CLI::ExistingFile);
  det->add_option("--b", b_file, "Dense matrix JSON for B (default: key \"b\" in A's file, else 0)")
      ->check(CLI::ExistingFile);
  add_run_options(det, cfg);

  std::size_t points = 1000;
  std::vector<double> box{-3.0, 3.0};
  auto* improj = app.add_subcommand("improj", "Sample the imaginary projection as a point cloud");
  auto* isrc = improj->add_option_group("source");
  isrc->add_option("-e,--expr", expr, "Polynomial expression");
  isrc->add_option("-f,--file", file, "Polynomial file")->check(CLI::ExistingFile);
  isrc->require_option(1);
  improj->add_option("--vars", vars, "Comma-separated variable names");
  improj->add_option("--points", points, "Number of points")->capture_default_str();
  improj->add_option("--box", box, "Sampling interval LO,HI for real and imaginary parts")
      ->delimiter(',')
      ->expected(2)
      ->capture_default_str();
  improj->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
  add_run_options(improj, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (improj->parsed() && improj->count("--output") == 0) cfg.output = "csv";

  try {
    if (stab->parsed()) return run_stab(expr, file, cone, vars, cfg);
    if (hko->parsed()) return run_hko(fsrc, gsrc, cone, vars, wpoints, cfg);
    if (det->parsed()) return run_detstab(a_file, b_file, cfg);
    if (improj->parsed()) return run_improj(expr, file, vars, points, box, cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "JSON error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
