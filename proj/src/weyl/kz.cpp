#include "detflow/weyl/kz.hpp"

#include <random>

#include "detflow/errors.hpp"
#include "detflow/poisson/bracket.hpp"
#include "detflow/poisson/field.hpp"

namespace detflow {

namespace {

void certify_exact(const KZSystem& sys) {
  for (std::size_t a = 0; a < sys.hams.size(); ++a)
    for (std::size_t b = a + 1; b < sys.hams.size(); ++b)
      if (!bracket(sys.hams[a], sys.hams[b]).is_zero())
        throw CommutativityFailure("{" + sys.specs[a].label() + ", " + sys.specs[b].label() +
                                   "} != 0 for word " + sys.word.to_string());
}

void certify_numeric(const KZSystem& sys) {
  Shape shape{sys.n, sys.n};
  std::mt19937_64 rng(0x6b7a);
  MatrixPoint x = random_point(shape, rng);
  std::vector<std::vector<cplx>> grads;
  for (const auto& h : sys.hams) grads.push_back(CompiledFunction(RationalFn(h)).gradient(x.values()));
  for (std::size_t a = 0; a < grads.size(); ++a)
    for (std::size_t b = a + 1; b < grads.size(); ++b)
      if (numeric_bracket(grads[a], grads[b], x.values(), shape).relative() > 1e-10)
        throw CommutativityFailure("{" + sys.specs[a].label() + ", " + sys.specs[b].label() +
                                   "} is numerically nonzero for word " + sys.word.to_string());
}

}  // namespace

KZSystem kz_hamiltonians(int n, const ReducedWord& word) {
  const auto length = static_cast<std::size_t>(n * (n - 1) / 2);
  Permutation w0 = Permutation::longest(n);
  if (word.length() != length)
    throw NotReducedWord("word " + word.to_string() + " has length " +
                         std::to_string(word.length()) + ", expected " + std::to_string(length));
  if (!(word_product(n, word) == w0))
    throw NotReducedWord("word " + word.to_string() + " is not a reduced word of w0 in S_" +
                         std::to_string(n));

  KZSystem sys;
  sys.n = n;
  sys.word = word;
  Shape shape{n, n};
  Permutation w0_inv = w0.inverse();
  Permutation v = Permutation::identity(n);
  for (std::size_t k = 0; k < length; ++k) {
    int j = word.letters[k];
    Permutation u = w0_inv * v;
    MinorSpec spec(u.window_image(j), v.window_image(j));
    sys.hams.push_back(minor(spec, shape));
    sys.specs.push_back(std::move(spec));
    v = v.times_simple(j);
  }

  if (n <= 4) {
    certify_exact(sys);
    sys.certificate = KZSystem::Certificate::Exact;
  } else {
    certify_numeric(sys);
    sys.certificate = KZSystem::Certificate::Numeric;
  }
  return sys;
}

json kz_to_json(const KZSystem& sys) {
  json hams = json::array();
  for (std::size_t k = 0; k < sys.hams.size(); ++k) {
    hams.push_back({{"label", sys.specs[k].label()},
                    {"minor", minor_spec_to_json(sys.specs[k])},
                    {"poly", poly_to_json(sys.hams[k])}});
  }
  return {{"n", sys.n},
          {"word", word_to_json(sys.word)},
          {"certificate", sys.certificate == KZSystem::Certificate::Exact ? "exact" : "numeric"},
          {"hamiltonians", hams}};
}

}  // namespace detflow
