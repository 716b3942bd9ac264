#include "detflow/polyalg/poly.hpp"

#include <algorithm>
#include <set>

#include "detflow/errors.hpp"

namespace detflow {

int Shape::var(int i, int j) const {
  if (!contains(i, j)) {
    throw IndexOutOfRange("coordinate x[" + std::to_string(i) + "][" + std::to_string(j) +
                          "] outside " + to_string());
  }
  return (i - 1) * cols + (j - 1);
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(int var, int exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(static_cast<std::uint16_t>(var), static_cast<std::uint16_t>(exponent));
    m.degree_ = exponent;
  }
  return m;
}

int Monomial::exponent(int var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                             [](const Factor& f, int v) { return f.first < v; });
  return (it != factors_.end() && it->first == var) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, static_cast<std::uint16_t>(a->second + b->second));
      ++a;
      ++b;
    }
  }
  out.degree_ = degree_ + o.degree_;
  return out;
}

Monomial Monomial::lowered(int var) const {
  Monomial out = *this;
  for (auto it = out.factors_.begin(); it != out.factors_.end(); ++it) {
    if (it->first == var) {
      if (--it->second == 0) out.factors_.erase(it);
      --out.degree_;
      break;
    }
  }
  return out;
}

Monomial Monomial::without(int var) const {
  Monomial out = *this;
  for (auto it = out.factors_.begin(); it != out.factors_.end(); ++it) {
    if (it->first == var) {
      out.degree_ -= it->second;
      out.factors_.erase(it);
      break;
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  // Lex over dense exponent vectors: the first differing coordinate decides.
  std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& fa = a.factors_[k];
    const auto& fb = b.factors_[k];
    if (fa.first != fb.first) return fa.first < fb.first ? std::strong_ordering::greater
                                                         : std::strong_ordering::less;
    if (fa.second != fb.second) return fa.second <=> fb.second;
  }
  return a.factors_.size() <=> b.factors_.size();
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::constant(Shape shape, const GaussRat& c) {
  Poly p(shape);
  p.add_term(Monomial(), c);
  return p;
}

Poly Poly::variable(Shape shape, int i, int j) { return from_var(shape, shape.var(i, j)); }

Poly Poly::from_var(Shape shape, int var) {
  Poly p(shape);
  p.terms_.emplace(Monomial::variable(var), GaussRat(1));
  return p;
}

Poly Poly::monomial(Shape shape, const Monomial& m, const GaussRat& c) {
  Poly p(shape);
  p.add_term(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

GaussRat Poly::constant_value() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? GaussRat() : it->second;
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

int Poly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

std::vector<int> Poly::variables() const {
  std::set<int> vars;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

bool Poly::depends_on(int var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first.exponent(var) > 0; });
}

const GaussRat& Poly::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading coefficient of the zero polynomial");
  return terms_.begin()->second;
}

void Poly::add_term(const Monomial& m, const GaussRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_same_shape(const Poly& o) const {
  if (shape_ != o.shape_)
    throw ShapeMismatch("polynomials on " + shape_.to_string() + " and " + o.shape_.to_string());
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_shape(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_shape(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const GaussRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same_shape(b);
  Poly out(a.shape_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Poly Poly::pow(int exponent) const {
  if (exponent < 0) throw Error("negative polynomial power");
  Poly result = constant(shape_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly Poly::differentiate(int i, int j) const { return diff_var(shape_.var(i, j)); }

Poly Poly::diff_var(int var) const {
  Poly out(shape_);
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(var);
    if (e > 0) out.add_term(m.lowered(var), c * GaussRat(e));
  }
  return out;
}

Poly Poly::drop_var(int var) const {
  Poly out(shape_);
  for (const auto& [m, c] : terms_)
    if (m.exponent(var) == 0) out.terms_.emplace(m, c);
  return out;
}

std::complex<double> Poly::evaluate(std::span<const std::complex<double>> values) const {
  if (static_cast<int>(values.size()) != shape_.size())
    throw ShapeMismatch("point size does not match " + shape_.to_string());
  std::complex<double> total = 0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> term = c.to_complex();
    for (const auto& [v, e] : m.factors()) {
      std::complex<double> x = values[v];
      for (int k = 0; k < e; ++k) term *= x;
    }
    total += term;
  }
  return total;
}

GaussRat Poly::evaluate_exact(std::span<const GaussRat> values) const {
  if (static_cast<int>(values.size()) != shape_.size())
    throw ShapeMismatch("point size does not match " + shape_.to_string());
  return evaluate_in<GaussRat>([&](int v) { return values[v]; },
                               [](const GaussRat& c) { return c; }, GaussRat());
}

Poly Poly::compose(Shape target, std::span<const Poly> images) const {
  if (static_cast<int>(images.size()) != shape_.size())
    throw ShapeMismatch("compose: need one image per coordinate of " + shape_.to_string());
  for (const auto& img : images)
    if (img.shape() != target) throw ShapeMismatch("compose: image shape mismatch");
  return evaluate_in<Poly>([&](int v) { return images[v]; },
                           [&](const GaussRat& c) { return Poly::constant(target, c); },
                           Poly(target));
}

std::string Poly::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    // Pull a leading minus out of real or purely imaginary coefficients.
    bool negative = (c.is_real() && sgn(c.re()) < 0) || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
    GaussRat mag = negative ? -c : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string vars;
    for (const auto& [v, e] : m.factors()) {
      if (!vars.empty()) vars += "*";
      vars += "x[" + std::to_string(shape_.row_of(v)) + "][" + std::to_string(shape_.col_of(v)) + "]";
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) {
      out += mag.render();
    } else if (mag.is_one()) {
      out += vars;
    } else {
      out += mag.render() + "*" + vars;
    }
  }
  return out;
}

}  // namespace detflow
