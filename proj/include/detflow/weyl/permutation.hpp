#pragma once

#include <string>
#include <vector>

#include "detflow/polyalg/json_io.hpp"

namespace detflow {

/// Element of S_n as its image list, w(i) = images[i-1]. Composition is
/// (w * v)(i) = w(v(i)).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  static Permutation longest(int n);
  /// s_i swaps i and i+1.
  static Permutation simple_reflection(int n, int i);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  int length() const;  // inversion count
  bool is_right_descent(int i) const { return images_[i - 1] > images_[i]; }
  /// w s_i: swaps the images at positions i and i+1.
  Permutation times_simple(int i) const;
  /// Sorted image of the window [1, k].
  std::vector<int> window_image(int k) const;

  friend Permutation operator*(const Permutation& w, const Permutation& v);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Word j_1 ... j_L in the simple reflections of S_n.
struct ReducedWord {
  std::vector<int> letters;

  std::size_t length() const { return letters.size(); }
  std::string to_string() const;
  static ReducedWord parse(const std::string& csv);
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend auto operator<=>(const ReducedWord&, const ReducedWord&) = default;
};

json word_to_json(const ReducedWord& w);
ReducedWord word_from_json(const json& j);

/// s_{j_1} ... s_{j_L}; throws NotReducedWord on letters outside [1, n-1].
Permutation word_product(int n, const ReducedWord& word);

/// All reduced words of w, by right-descent recursion. SizeGuard for n > 5.
std::vector<ReducedWord> all_reduced_words(const Permutation& w);

}  // namespace detflow
