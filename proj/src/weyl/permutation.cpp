#include "detflow/weyl/permutation.hpp"

#include <algorithm>
#include <sstream>

#include "detflow/errors.hpp"

namespace detflow {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<int> sorted = images_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i) + 1) throw Error("not a permutation");
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  return Permutation(std::move(v));
}

Permutation Permutation::longest(int n) {
  if (n < 1) throw Error("longest element needs n >= 1");
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

Permutation Permutation::simple_reflection(int n, int i) {
  if (i < 1 || i >= n) throw Error("simple reflection index out of range");
  return identity(n).times_simple(i);
}

Permutation Permutation::inverse() const {
  std::vector<int> v(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) v[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(v));
}

int Permutation::length() const {
  int inv = 0;
  for (std::size_t a = 0; a < images_.size(); ++a)
    for (std::size_t b = a + 1; b < images_.size(); ++b)
      if (images_[a] > images_[b]) ++inv;
  return inv;
}

Permutation Permutation::times_simple(int i) const {
  Permutation out = *this;
  std::swap(out.images_[i - 1], out.images_[i]);
  return out;
}

std::vector<int> Permutation::window_image(int k) const {
  std::vector<int> out(images_.begin(), images_.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

Permutation operator*(const Permutation& w, const Permutation& v) {
  if (w.n() != v.n()) throw Error("composing permutations of different degree");
  std::vector<int> out(v.images_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = w.images_[v.images_[i] - 1];
  return Permutation(std::move(out));
}

std::string ReducedWord::to_string() const {
  std::string s;
  for (std::size_t a = 0; a < letters.size(); ++a) s += (a ? "," : "") + std::to_string(letters[a]);
  return s;
}

ReducedWord ReducedWord::parse(const std::string& csv) {
  ReducedWord w;
  std::stringstream in(csv);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      w.letters.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw NotReducedWord("word letter '" + tok + "' is not an integer");
    }
  }
  return w;
}

json word_to_json(const ReducedWord& w) { return w.letters; }
ReducedWord word_from_json(const json& j) { return {j.get<std::vector<int>>()}; }

Permutation word_product(int n, const ReducedWord& word) {
  Permutation w = Permutation::identity(n);
  for (int j : word.letters) {
    if (j < 1 || j >= n)
      throw NotReducedWord("letter " + std::to_string(j) + " is not a simple reflection of S_" +
                           std::to_string(n));
    w = w.times_simple(j);
  }
  return w;
}

namespace {

void collect(const Permutation& w, std::vector<int>& suffix, std::vector<ReducedWord>& out) {
  if (w.length() == 0) {
    out.push_back({std::vector<int>(suffix.rbegin(), suffix.rend())});
    return;
  }
  for (int i = 1; i < w.n(); ++i) {
    if (!w.is_right_descent(i)) continue;
    suffix.push_back(i);
    collect(w.times_simple(i), suffix, out);
    suffix.pop_back();
  }
}

}  // namespace

std::vector<ReducedWord> all_reduced_words(const Permutation& w) {
  if (w.n() > 5) throw SizeGuard("reduced-word enumeration is limited to n <= 5");
  std::vector<ReducedWord> out;
  std::vector<int> suffix;
  collect(w, suffix, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detflow
