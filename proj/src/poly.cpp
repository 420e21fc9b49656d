#include "conicstab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

namespace conicstab {

MultiPoly::MultiPoly(std::vector<std::string> var_names, double zero_tol)
    : var_names_(std::move(var_names)), zero_tol_(zero_tol) {}

MultiPoly::MultiPoly(std::vector<std::string> var_names, TermMap terms, double zero_tol)
    : var_names_(std::move(var_names)), terms_(std::move(terms)), zero_tol_(zero_tol) {
  for (const auto& [e, c] : terms_)
    if (e.size() != var_names_.size())
      throw std::invalid_argument("MultiPoly: exponent length does not match variable count");
  prune();
}

MultiPoly MultiPoly::constant(std::vector<std::string> var_names, Complex c) {
  MultiPoly p(std::move(var_names));
  p.add_term(Exponent(p.nvars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> var_names, std::size_t index) {
  MultiPoly p(std::move(var_names));
  if (index >= p.nvars()) throw std::out_of_range("MultiPoly::variable: index out of range");
  Exponent e(p.nvars(), 0);
  e[index] = 1;
  p.add_term(e, 1.0);
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return d;
}

Complex MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

double MultiPoly::norm1() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c);
  return s;
}

void MultiPoly::add_term(const Exponent& e, Complex c) {
  if (e.size() != nvars()) throw std::invalid_argument("MultiPoly: exponent length mismatch");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= zero_tol_) terms_.erase(it);
}

void MultiPoly::require_same_vars(const MultiPoly& other) const {
  if (var_names_ != other.var_names_)
    throw std::invalid_argument("MultiPoly: operands use different variable lists");
}

void MultiPoly::prune() {
  std::erase_if(terms_, [this](const auto& kv) { return std::abs(kv.second) <= zero_tol_; });
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  require_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  require_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(Complex s) {
  for (auto& [e, c] : terms_) c *= s;
  prune();
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_vars(b);
  MultiPoly::TermMap out;
  Exponent e(a.nvars());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  return MultiPoly(a.var_names_, std::move(out), a.zero_tol_);
}

MultiPoly pow(const MultiPoly& f, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(f.var_names(), 1.0);
  MultiPoly base = f;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------

std::size_t MatrixVarIndex::flat(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (j >= n_) throw std::out_of_range("MatrixVarIndex: entry outside the matrix");
  return i * n_ - i * (i + 1) / 2 + j;
}

std::pair<std::size_t, std::size_t> MatrixVarIndex::entry(std::size_t flat_index) const {
  if (flat_index >= size()) throw std::out_of_range("MatrixVarIndex: flat index out of range");
  std::size_t i = 0;
  while (flat_index >= n_ - i) {
    flat_index -= n_ - i;
    ++i;
  }
  return {i, i + flat_index};
}

std::vector<std::string> MatrixVarIndex::names(std::string_view prefix) const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) {
      std::string s(prefix);
      s += std::to_string(i + 1);
      if (n_ > 9) s += '_';
      s += std::to_string(j + 1);
      out.push_back(std::move(s));
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars, double zero_tol)
      : s_(text), vars_(vars), zero_tol_(zero_tol) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  MultiPoly constant(Complex c) const {
    MultiPoly p(vars_, zero_tol_);
    p.add_term(Exponent(vars_.size(), 0), c);
    return p;
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (eat('*')) acc = acc * unary();
    return acc;
  }

  MultiPoly unary() {
    if (eat('+')) return unary();
    if (eat('-')) return Complex(-1.0) * unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (!eat('^')) return base;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') throw ParseError("negative exponent", pos_);
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a non-negative integer exponent", start);
    unsigned e = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, e);
    if (ec != std::errc{}) throw ParseError("exponent out of range", start);
    return pow(base, e);
  }

  MultiPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("expected an expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it != vars_.end()) {
        Exponent e(vars_.size(), 0);
        e[static_cast<std::size_t>(it - vars_.begin())] = 1;
        MultiPoly p(vars_, zero_tol_);
        p.add_term(e, 1.0);
        return p;
      }
      if (name == "i") return constant(Complex(0.0, 1.0));
      throw ParseError("unknown variable '" + name + "'", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  MultiPoly number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < s_.size() && (s_[look] == '+' || s_[look] == '-')) ++look;
      if (look < s_.size() && std::isdigit(static_cast<unsigned char>(s_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, value);
    if (ec != std::errc{} || ptr != s_.data() + pos_) throw ParseError("malformed number", start);
    if (pos_ < s_.size() && s_[pos_] == 'i' && (pos_ + 1 == s_.size() || !ident_char(s_[pos_ + 1]))) {
      ++pos_;
      return constant(Complex(0.0, value));
    }
    return constant(Complex(value, 0.0));
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  double zero_tol_;
  std::size_t pos_ = 0;
};

// Natural ordering: digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
    const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      const std::string na = a.substr(i, ie - i), nb = b.substr(j, je - j);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

MultiPoly parse(std::string_view text, const std::vector<std::string>& var_names,
                const ToleranceProfile& tol) {
  return Parser(text, var_names, tol.coeff_zero_tol).run();
}

std::vector<std::string> collect_variables(std::string_view text) {
  std::set<std::string> names;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      // Skip a numeric literal together with an 'e' exponent or 'i' suffix.
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) ++pos;
      if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        std::size_t look = pos + 1;
        if (look < text.size() && (text[look] == '+' || text[look] == '-')) ++look;
        if (look < text.size() && std::isdigit(static_cast<unsigned char>(text[look]))) {
          pos = look;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
      }
      if (pos < text.size() && text[pos] == 'i' && (pos + 1 == text.size() || !ident_char(text[pos + 1]))) ++pos;
    } else if (ident_start(c)) {
      const std::size_t start = pos;
      while (pos < text.size() && ident_char(text[pos])) ++pos;
      std::string name(text.substr(start, pos - start));
      if (name != "i") names.insert(std::move(name));
    } else {
      ++pos;
    }
  }
  std::vector<std::string> out(names.begin(), names.end());
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<Exponent, Complex>> terms(f.terms().begin(), f.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const auto da = std::accumulate(a.first.begin(), a.first.end(), 0u);
    const auto db = std::accumulate(b.first.begin(), b.first.end(), 0u);
    if (da != db) return da > db;
    return a.first > b.first;
  });

  std::string out;
  for (const auto& [e, c] : terms) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += f.var_names()[k];
      if (e[k] > 1) mono += '^' + std::to_string(e[k]);
    }
    bool negative = false;
    std::string coeff;
    if (c.imag() == 0.0) {
      negative = c.real() < 0;
      const double m = std::abs(c.real());
      if (m != 1.0 || mono.empty()) coeff = format_real(m);
    } else if (c.real() == 0.0) {
      negative = c.imag() < 0;
      const double m = std::abs(c.imag());
      coeff = m == 1.0 ? "i" : format_real(m) + "i";
    } else {
      coeff = "(" + format_real(c.real()) + (c.imag() < 0 ? "-" : "+") +
              format_real(std::abs(c.imag())) + "i)";
    }
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    out += coeff;
    if (!coeff.empty() && !mono.empty()) out += '*';
    out += mono;
  }
  return out;
}

std::pair<MultiPoly, MultiPoly> real_imag_parts(const MultiPoly& h) {
  MultiPoly::TermMap re, im;
  for (const auto& [e, c] : h.terms()) {
    re[e] = c.real();
    im[e] = c.imag();
  }
  return {MultiPoly(h.var_names(), std::move(re), h.zero_tol()),
          MultiPoly(h.var_names(), std::move(im), h.zero_tol())};
}

bool is_real(const MultiPoly& f, double tol) {
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [tol](const auto& kv) { return std::abs(kv.second.imag()) <= tol; });
}

bool is_homogeneous(const MultiPoly& f) {
  const int d = f.degree();
  return std::all_of(f.terms().begin(), f.terms().end(), [d](const auto& kv) {
    return static_cast<int>(std::accumulate(kv.first.begin(), kv.first.end(), 0u)) == d;
  });
}

namespace {

template <class T>
Complex eval_impl(const MultiPoly& f, std::span<const T> point) {
  if (point.size() != f.nvars()) throw std::invalid_argument("eval: point dimension mismatch");
  std::vector<std::uint32_t> max_exp(f.nvars(), 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t k = 0; k < e.size(); ++k) max_exp[k] = std::max(max_exp[k], e[k]);
  std::vector<std::vector<Complex>> powers(f.nvars());
  for (std::size_t k = 0; k < f.nvars(); ++k) {
    powers[k].resize(max_exp[k] + 1);
    powers[k][0] = 1.0;
    for (std::uint32_t p = 1; p <= max_exp[k]; ++p) powers[k][p] = powers[k][p - 1] * Complex(point[k]);
  }
  Complex sum{};
  for (const auto& [e, c] : f.terms()) {
    Complex term = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0) term *= powers[k][e[k]];
    sum += term;
  }
  return sum;
}

}  // namespace

Complex eval(const MultiPoly& f, std::span<const Complex> point) { return eval_impl(f, point); }
Complex eval(const MultiPoly& f, std::span<const double> point) { return eval_impl(f, point); }

namespace {

template <class X, class Y>
UniPoly restrict_line_impl(const MultiPoly& f, std::span<const X> x, std::span<const Y> y) {
  if (x.size() != f.nvars() || y.size() != f.nvars())
    throw std::invalid_argument("restrict_line: dimension mismatch");
  if (f.is_zero()) return {};
  std::vector<std::uint32_t> max_exp(f.nvars(), 0);
  for (const auto& [e, c] : f.terms())
    for (std::size_t k = 0; k < e.size(); ++k) max_exp[k] = std::max(max_exp[k], e[k]);

  // Coefficients of (x_k + t y_k)^p, built by repeated multiplication.
  std::vector<std::vector<std::vector<Complex>>> powers(f.nvars());
  for (std::size_t k = 0; k < f.nvars(); ++k) {
    powers[k].resize(max_exp[k] + 1);
    powers[k][0] = {1.0};
    for (std::uint32_t p = 1; p <= max_exp[k]; ++p) {
      const auto& prev = powers[k][p - 1];
      std::vector<Complex> next(prev.size() + 1);
      for (std::size_t d = 0; d < prev.size(); ++d) {
        next[d] += x[k] * prev[d];
        next[d + 1] += y[k] * prev[d];
      }
      powers[k][p] = std::move(next);
    }
  }

  std::vector<Complex> acc(static_cast<std::size_t>(f.degree()) + 1);
  std::vector<Complex> term, next;
  for (const auto& [e, c] : f.terms()) {
    term.assign(1, c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      const auto& factor = powers[k][e[k]];
      next.assign(term.size() + factor.size() - 1, Complex{});
      for (std::size_t a = 0; a < term.size(); ++a)
        for (std::size_t b = 0; b < factor.size(); ++b) next[a + b] += term[a] * factor[b];
      term.swap(next);
    }
    for (std::size_t d = 0; d < term.size(); ++d) acc[d] += term[d];
  }
  return UniPoly(std::move(acc), f.zero_tol());
}

}  // namespace

UniPoly restrict_line(const MultiPoly& f, std::span<const double> x, std::span<const double> y) {
  return restrict_line_impl(f, x, y);
}

UniPoly restrict_line(const MultiPoly& f, std::span<const Complex> x, std::span<const double> y) {
  return restrict_line_impl(f, x, y);
}

MultiPoly substitute_partial(const MultiPoly& f, const std::map<std::size_t, Complex>& assignments) {
  for (const auto& [k, v] : assignments)
    if (k >= f.nvars()) throw std::out_of_range("substitute_partial: unknown variable index");
  std::vector<std::size_t> keep;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < f.nvars(); ++k)
    if (!assignments.contains(k)) {
      keep.push_back(k);
      names.push_back(f.var_names()[k]);
    }
  MultiPoly::TermMap out;
  Exponent reduced(keep.size());
  for (const auto& [e, c] : f.terms()) {
    Complex coeff = c;
    for (const auto& [k, v] : assignments)
      if (e[k] != 0) coeff *= std::pow(v, static_cast<int>(e[k]));
    for (std::size_t r = 0; r < keep.size(); ++r) reduced[r] = e[keep[r]];
    out[reduced] += coeff;
  }
  return MultiPoly(std::move(names), std::move(out), f.zero_tol());
}

MultiPoly directional_derivative(const MultiPoly& f, std::span<const double> v) {
  if (v.size() != f.nvars()) throw std::invalid_argument("directional_derivative: dimension mismatch");
  MultiPoly::TermMap out;
  for (const auto& [e, c] : f.terms())
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0 || v[k] == 0.0) continue;
      Exponent d = e;
      d[k] -= 1;
      out[d] += c * (static_cast<double>(e[k]) * v[k]);
    }
  return MultiPoly(f.var_names(), std::move(out), f.zero_tol());
}

MultiPoly wronskian_v(const MultiPoly& f, const MultiPoly& g, std::span<const double> v) {
  if (!is_real(f) || !is_real(g)) throw std::invalid_argument("wronskian_v: expects real polynomials");
  return directional_derivative(f, v) * g - f * directional_derivative(g, v);
}

MultiPoly diag_substitution(const MultiPoly& f) {
  const MatrixVarIndex index(f.nvars());
  MultiPoly::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    Exponent m(index.size(), 0);
    for (std::size_t k = 0; k < e.size(); ++k) m[index.flat(k, k)] = e[k];
    out[m] += c;
  }
  return MultiPoly(index.names(), std::move(out), f.zero_tol());
}

MultiPoly rename_variables(const MultiPoly& f, std::vector<std::string> var_names) {
  if (var_names.size() != f.nvars()) throw std::invalid_argument("rename_variables: length mismatch");
  return MultiPoly(std::move(var_names), f.terms(), f.zero_tol());
}

MultiPoly append_variable(const MultiPoly& f, const std::string& name) {
  auto names = f.var_names();
  names.push_back(name);
  MultiPoly::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    Exponent x = e;
    x.push_back(0);
    out.emplace(std::move(x), c);
  }
  return MultiPoly(std::move(names), std::move(out), f.zero_tol());
}

}  // namespace conicstab
