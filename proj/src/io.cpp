#include "conicstab/io.hpp"

#include <fstream>
#include <stdexcept>

namespace conicstab::io {

namespace {

json complex_entry(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return json::array({c.real(), c.imag()});
}

Complex entry_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("matrix entry must be a number or an [re, im] pair");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_count(const std::string& s, std::string_view what) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || v == 0)
    throw std::invalid_argument("cone spec: bad dimension '" + s + "' for " + std::string(what));
  return v;
}

}  // namespace

json to_json(const MultiPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", e}, {"re", c.real()}, {"im", c.imag()}});
  return {{"vars", f.var_names()}, {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const json& j, const ToleranceProfile& tol) {
  if (!j.contains("vars") || !j.contains("terms")) throw std::invalid_argument("polynomial JSON needs vars and terms");
  MultiPoly f(j.at("vars").get<std::vector<std::string>>(), tol.coeff_zero_tol);
  for (const auto& t : j.at("terms")) {
    auto e = t.at("exp").get<Exponent>();
    if (e.size() != f.nvars()) throw std::invalid_argument("polynomial JSON: exponent length differs from vars");
    const double re = t.value("re", 0.0);
    const double im = t.value("im", 0.0);
    f.add_term(e, {re, im});
  }
  return f;
}

json to_json(const Cone& k) {
  return std::visit(
      [&](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, OrthantCone>) {
          return {{"type", "orthant"}, {"n", c.n}};
        } else if constexpr (std::is_same_v<T, PolyhedralCone>) {
          return {{"type", "polyhedral"}, {"generators", c.generators}};
        } else if constexpr (std::is_same_v<T, PsdCone>) {
          return {{"type", "psd"}, {"n", c.n}};
        } else {
          json factors = json::array();
          for (const auto& f : c.factors) factors.push_back(to_json(f));
          return {{"type", "product"}, {"factors", std::move(factors)}};
        }
      },
      k.variant());
}

Cone cone_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "orthant") return Cone::orthant(j.at("n").get<std::size_t>());
  if (type == "psd") return Cone::psd(j.at("n").get<std::size_t>());
  if (type == "polyhedral") return Cone::polyhedral(j.at("generators").get<std::vector<std::vector<double>>>());
  if (type == "product") {
    std::vector<Cone> factors;
    for (const auto& f : j.at("factors")) factors.push_back(cone_from_json(f));
    return Cone::product(std::move(factors));
  }
  throw std::invalid_argument("unknown cone type '" + type + "'");
}

Cone parse_cone_spec(std::string_view spec_in, const std::filesystem::path& base_dir) {
  const std::string spec = trim(spec_in);
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("cone spec '" + spec + "' has no ':'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "orthant") return Cone::orthant(parse_count(arg, kind));
  if (kind == "psd") return Cone::psd(parse_count(arg, kind));
  if (kind == "poly") {
    if (arg.empty() || arg[0] != '@') throw std::invalid_argument("cone spec: poly expects @file.json");
    std::filesystem::path p = arg.substr(1);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    const json j = read_json_file(p);
    if (j.contains("type")) return cone_from_json(j);
    return Cone::polyhedral(j.at("generators").get<std::vector<std::vector<double>>>());
  }
  if (kind == "prod") {
    // Nested products flatten, so a plain comma split is unambiguous.
    std::vector<Cone> factors;
    std::size_t start = 0;
    while (start <= arg.size()) {
      const auto comma = arg.find(',', start);
      const std::string part = arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      std::string_view rest(part);
      while (rest.rfind("prod:", 0) == 0) rest.remove_prefix(5);
      factors.push_back(parse_cone_spec(rest, base_dir));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return Cone::product(std::move(factors));
  }
  throw std::invalid_argument("unknown cone kind '" + kind + "'");
}

json to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_entry(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw std::invalid_argument("matrix JSON must be an array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw std::invalid_argument("matrix JSON rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = entry_from_json(j[i][c]);
  }
  return m;
}

json to_json(const BlockMatrix& a) {
  json grid = json::array();
  for (std::size_t i = 0; i < a.grid_rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.grid_cols(); ++j) row.push_back(to_json(a.block(i, j)));
    grid.push_back(std::move(row));
  }
  const bool complex_entries = !a.flatten().is_real();
  return {{"n", a.grid_rows()}, {"d", a.block_rows()}, {"blocks", std::move(grid)}, {"re_im", complex_entries}};
}

BlockMatrix block_matrix_from_json(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  const auto d = j.at("d").get<std::size_t>();
  const json& grid = j.at("blocks");
  if (grid.size() != n) throw std::invalid_argument("block matrix JSON: expected n block rows");
  BlockMatrix a(n, n, d, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i].size() != n) throw std::invalid_argument("block matrix JSON: expected n blocks per row");
    for (std::size_t k = 0; k < n; ++k) a.set_block(i, k, matrix_from_json(grid[i][k]));
  }
  return a;
}

json to_json(const Verdict& v) {
  json out{{"status", to_string(v.status)}, {"samples", v.samples}, {"seed", v.seed}};
  if (v.certificate) out["certificate"] = *v.certificate;
  if (v.witness) {
    json w = json::array();
    for (const auto& c : *v.witness) w.push_back(json::array({c.real(), c.imag()}));
    out["witness"] = std::move(w);
    out["residual"] = v.residual;
  }
  if (v.draw) out["draw"] = *v.draw;
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

}  // namespace conicstab::io
