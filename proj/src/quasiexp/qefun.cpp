#include "detflow/quasiexp/qefun.hpp"

#include <algorithm>
#include <cmath>

namespace detflow {

QEFun::QEFun(std::vector<QETerm> terms) : terms_(std::move(terms)) { simplify(); }

QEFun QEFun::constant(cplx c) { return QEFun({QETerm{0.0, {c}}}); }

QEFun QEFun::exponential(cplx alpha, cplx c) { return QEFun({QETerm{alpha, {c}}}); }

QEFun QEFun::monomial(int degree, cplx c) {
  std::vector<cplx> coeffs(degree + 1, 0.0);
  coeffs[degree] = c;
  return QEFun({QETerm{0.0, std::move(coeffs)}});
}

void QEFun::simplify() {
  for (auto& t : terms_)
    if (std::abs(t.alpha) < kMergeTolerance) t.alpha = 0.0;
  std::sort(terms_.begin(), terms_.end(), [](const QETerm& a, const QETerm& b) {
    if (a.alpha.real() != b.alpha.real()) return a.alpha.real() < b.alpha.real();
    return a.alpha.imag() < b.alpha.imag();
  });

  // Greedy merge against the first exponent of each run. Sorting is by real
  // part first, so scan forward while the real parts are still close.
  std::vector<QETerm> merged;
  std::vector<bool> used(terms_.size(), false);
  for (std::size_t a = 0; a < terms_.size(); ++a) {
    if (used[a]) continue;
    QETerm acc = terms_[a];
    for (std::size_t b = a + 1; b < terms_.size(); ++b) {
      if (terms_[b].alpha.real() - acc.alpha.real() > kMergeTolerance) break;
      if (used[b] || std::abs(terms_[b].alpha - acc.alpha) > kMergeTolerance) continue;
      used[b] = true;
      if (terms_[b].coeffs.size() > acc.coeffs.size()) acc.coeffs.resize(terms_[b].coeffs.size(), 0.0);
      for (std::size_t k = 0; k < terms_[b].coeffs.size(); ++k) acc.coeffs[k] += terms_[b].coeffs[k];
    }
    merged.push_back(std::move(acc));
  }

  double biggest = 0;
  for (const auto& t : merged)
    for (const auto& c : t.coeffs) biggest = std::max(biggest, std::abs(c));
  const double floor = kDropTolerance * biggest;

  terms_.clear();
  for (auto& t : merged) {
    for (auto& c : t.coeffs)
      if (std::abs(c) <= floor) c = 0.0;
    while (!t.coeffs.empty() && t.coeffs.back() == cplx(0.0)) t.coeffs.pop_back();
    if (!t.coeffs.empty()) terms_.push_back(std::move(t));
  }
}

cplx QEFun::operator()(cplx t) const {
  cplx total = 0;
  for (const auto& term : terms_) {
    cplx p = 0;
    for (auto it = term.coeffs.rbegin(); it != term.coeffs.rend(); ++it) p = p * t + *it;
    total += term.alpha == cplx(0.0) ? p : p * std::exp(term.alpha * t);
  }
  return total;
}

QEFun QEFun::derivative() const {
  // (p e^{at})' = (p' + a p) e^{at}
  std::vector<QETerm> out;
  for (const auto& term : terms_) {
    QETerm d{term.alpha, std::vector<cplx>(term.coeffs.size(), 0.0)};
    for (std::size_t k = 0; k < term.coeffs.size(); ++k) {
      d.coeffs[k] += term.alpha * term.coeffs[k];
      if (k > 0) d.coeffs[k - 1] += static_cast<double>(k) * term.coeffs[k];
    }
    out.push_back(std::move(d));
  }
  return QEFun(std::move(out));
}

QEFun QEFun::antiderivative() const {
  std::vector<QETerm> out;
  cplx offset = 0;  // value at t = 0 of the exponential antiderivatives
  for (const auto& term : terms_) {
    const auto& p = term.coeffs;
    if (term.alpha == cplx(0.0)) {
      QETerm q{0.0, std::vector<cplx>(p.size() + 1, 0.0)};
      for (std::size_t k = 0; k < p.size(); ++k) q.coeffs[k + 1] = p[k] / static_cast<double>(k + 1);
      out.push_back(std::move(q));
      continue;
    }
    // int p e^{at} = e^{at} sum_j (-1)^j p^{(j)} / a^{j+1}
    std::vector<cplx> deriv = p;
    std::vector<cplx> q(p.size(), 0.0);
    cplx factor = 1.0 / term.alpha;
    for (std::size_t j = 0; j < p.size(); ++j) {
      for (std::size_t k = 0; k < deriv.size(); ++k) q[k] += factor * deriv[k];
      std::vector<cplx> next(deriv.size() > 1 ? deriv.size() - 1 : 0);
      for (std::size_t k = 1; k < deriv.size(); ++k) next[k - 1] = static_cast<double>(k) * deriv[k];
      deriv = std::move(next);
      factor *= -1.0 / term.alpha;
    }
    offset += q[0];
    out.push_back({term.alpha, std::move(q)});
  }
  out.push_back({0.0, {-offset}});
  return QEFun(std::move(out));
}

QEFun QEFun::operator-() const {
  QEFun out = *this;
  for (auto& t : out.terms_)
    for (auto& c : t.coeffs) c = -c;
  return out;
}

QEFun& QEFun::operator+=(const QEFun& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  simplify();
  return *this;
}

QEFun& QEFun::operator-=(const QEFun& o) { return *this += -o; }

QEFun& QEFun::operator*=(cplx c) {
  for (auto& t : terms_)
    for (auto& x : t.coeffs) x *= c;
  simplify();
  return *this;
}

QEFun operator*(const QEFun& a, const QEFun& b) {
  std::vector<QETerm> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      QETerm t{ta.alpha + tb.alpha, std::vector<cplx>(ta.coeffs.size() + tb.coeffs.size() - 1, 0.0)};
      for (std::size_t i = 0; i < ta.coeffs.size(); ++i)
        for (std::size_t j = 0; j < tb.coeffs.size(); ++j) t.coeffs[i + j] += ta.coeffs[i] * tb.coeffs[j];
      out.push_back(std::move(t));
    }
  }
  return QEFun(std::move(out));
}

QEFun QEFun::shifted_exponent(cplx beta) const {
  std::vector<QETerm> out = terms_;
  for (auto& t : out) t.alpha += beta;
  return QEFun(std::move(out));
}

QEFun QEFun::chopped(double abs_tol) const {
  std::vector<QETerm> out = terms_;
  for (auto& t : out)
    for (auto& c : t.coeffs)
      if (std::abs(c) < abs_tol) c = 0.0;
  return QEFun(std::move(out));
}

double QEFun::max_coeff() const {
  double m = 0;
  for (const auto& t : terms_)
    for (const auto& c : t.coeffs) m = std::max(m, std::abs(c));
  return m;
}

int QEFun::polynomial_degree() const {
  for (const auto& t : terms_)
    if (t.alpha == cplx(0.0)) return t.degree();
  return -1;
}

int QEFun::max_exponential_degree() const {
  int d = -1;
  for (const auto& t : terms_)
    if (t.alpha != cplx(0.0)) d = std::max(d, t.degree());
  return d;
}

int QEFun::exponential_count() const {
  return static_cast<int>(std::count_if(terms_.begin(), terms_.end(),
                                        [](const QETerm& t) { return t.alpha != cplx(0.0); }));
}

nlohmann::json qe_to_json(const QEFun& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    nlohmann::json poly = nlohmann::json::array();
    for (const auto& c : t.coeffs) poly.push_back({c.real(), c.imag()});
    out.push_back({{"alpha", {t.alpha.real(), t.alpha.imag()}}, {"poly", poly}});
  }
  return out;
}

QEFun qe_from_json(const nlohmann::json& j) {
  std::vector<QETerm> terms;
  for (const auto& t : j) {
    QETerm term{{t.at("alpha").at(0).get<double>(), t.at("alpha").at(1).get<double>()}, {}};
    for (const auto& c : t.at("poly")) term.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    terms.push_back(std::move(term));
  }
  return QEFun(std::move(terms));
}

}  // namespace detflow
