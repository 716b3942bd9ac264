#include "detflow/quasiexp/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detflow/errors.hpp"

namespace detflow {

namespace {

constexpr double kMultipleRootTolerance = 1e-8;
constexpr double kCandidateRadius = 1e-3;
constexpr double kBackwardTolerance = 1e-11;

// sum_k |c_k| k!/(k-j)! |z|^{k-j}
double derivative_scale(const std::vector<cplx>& c, int j, double r) {
  double s = 0;
  for (int k = static_cast<int>(c.size()) - 1; k >= j; --k) {
    double falling = 1;
    for (int i = 0; i < j; ++i) falling *= k - i;
    s = s * r + std::abs(c[k]) * falling;
  }
  return s;
}

bool passes_multiplicity(const std::vector<cplx>& c, cplx mu, int m) {
  for (int j = 0; j < m; ++j) {
    double scale = derivative_scale(c, j, std::abs(mu));
    if (std::abs(poly_derivative_at(c, j, mu)) > kMultipleRootTolerance * scale) return false;
  }
  return true;
}

std::vector<cplx> aberth(const std::vector<cplx>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  // Fujiwara-type radius bound.
  double radius = 0;
  for (int k = 0; k < d; ++k)
    radius = std::max(radius, std::pow(std::abs(c[k] / c[d]), 1.0 / (d - k)));
  radius = std::max(radius, 1e-3);

  std::vector<cplx> z(d);
  for (int k = 0; k < d; ++k)
    z[k] = std::polar(radius, 2 * std::numbers::pi * k / d + 0.4);

  std::vector<cplx> dc(d);
  for (int k = 1; k <= d; ++k) dc[k - 1] = static_cast<double>(k) * c[k];

  auto horner = [](const std::vector<cplx>& p, cplx x) {
    cplx v = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
    return v;
  };

  for (int iter = 0; iter < 2000; ++iter) {
    double worst = 0;
    for (int i = 0; i < d; ++i) {
      cplx p = horner(c, z[i]);
      if (p == cplx(0.0)) continue;
      cplx ratio = p / horner(dc, z[i]);
      cplx sum = 0;
      for (int j = 0; j < d; ++j)
        if (j != i && z[i] != z[j]) sum += 1.0 / (z[i] - z[j]);
      cplx w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / (1 + std::abs(z[i])));
    }
    if (worst < 1e-16) break;
  }
  return z;
}

// A root of multiplicity m is a simple root of p^{(m-1)}; Newton on that
// recovers it far more accurately than the mean of the spread cluster.
cplx refine_multiple(const std::vector<cplx>& c, cplx mu, int m) {
  if (m < 2) return mu;
  for (int iter = 0; iter < 8; ++iter) {
    const cplx d = poly_derivative_at(c, m, mu);
    if (d == cplx(0.0)) break;
    const cplx step = poly_derivative_at(c, m - 1, mu) / d;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    mu -= step;
    if (std::abs(step) <= 1e-16 * (1 + std::abs(mu))) break;
  }
  return mu;
}

}  // namespace

cplx poly_derivative_at(const std::vector<cplx>& coeffs, int j, cplx z) {
  cplx v = 0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= j; --k) {
    double falling = 1;
    for (int i = 0; i < j; ++i) falling *= k - i;
    v = v * z + coeffs[k] * falling;
  }
  return v;
}

double backward_error(const std::vector<cplx>& coeffs, cplx z) {
  double scale = derivative_scale(coeffs, 0, std::abs(z));
  if (scale == 0) return 0;
  return std::abs(poly_derivative_at(coeffs, 0, z)) / scale;
}

std::vector<RootCluster> poly_roots(const std::vector<cplx>& coeffs) {
  std::vector<cplx> c = coeffs;
  while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
  if (c.size() < 2) throw Error("poly_roots: polynomial has no roots (degree < 1)");

  int zeros = 0;
  while (c[zeros] == cplx(0.0)) ++zeros;
  c.erase(c.begin(), c.begin() + zeros);
  const cplx lead = c.back();
  for (auto& x : c) x /= lead;

  std::vector<RootCluster> out;
  if (zeros > 0) out.push_back({0.0, zeros});
  if (c.size() < 2) return out;

  std::vector<cplx> z = aberth(c);
  for (const auto& r : z)
    if (backward_error(c, r) > kBackwardTolerance)
      throw NoConvergence("poly_roots: Aberth iteration did not reach backward error 1e-11");

  // Agglomerative merge of the closest candidate pair whose merged mean
  // passes the multiplicity test.
  std::vector<std::vector<cplx>> groups;
  for (const auto& r : z) groups.push_back({r});
  auto mean = [](const std::vector<cplx>& g) {
    cplx s = 0;
    for (const auto& x : g) s += x;
    return s / static_cast<double>(g.size());
  };
  auto center = [&](const std::vector<cplx>& g) {
    const cplx mu = mean(g);
    const cplx r = refine_multiple(c, mu, static_cast<int>(g.size()));
    // keep the refinement only if it stayed inside the cluster
    return std::abs(r - mu) <= kCandidateRadius * (1 + std::abs(mu)) ? r : mu;
  };
  for (;;) {
    struct Cand {
      double dist;
      std::size_t a, b;
    };
    std::vector<Cand> cands;
    for (std::size_t a = 0; a < groups.size(); ++a)
      for (std::size_t b = a + 1; b < groups.size(); ++b) {
        cplx ma = mean(groups[a]), mb = mean(groups[b]);
        double dist = std::abs(ma - mb);
        if (dist <= kCandidateRadius * (1 + std::max(std::abs(ma), std::abs(mb)))) cands.push_back({dist, a, b});
      }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.dist < y.dist; });
    bool merged = false;
    for (const auto& cand : cands) {
      std::vector<cplx> g = groups[cand.a];
      g.insert(g.end(), groups[cand.b].begin(), groups[cand.b].end());
      if (!passes_multiplicity(c, center(g), static_cast<int>(g.size()))) continue;
      groups[cand.a] = std::move(g);
      groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(cand.b));
      merged = true;
      break;
    }
    if (!merged) break;
  }

  for (const auto& g : groups) out.push_back({center(g), static_cast<int>(g.size())});
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace detflow
