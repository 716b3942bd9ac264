#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detflow/polyalg/json_io.hpp"
#include "detflow/polyalg/poly.hpp"

namespace detflow {

/// Row set I and column set J of a minor Delta_{I,J}; both strictly
/// increasing, 1-based, of equal size r >= 1.
class MinorSpec {
 public:
  MinorSpec(std::vector<int> rows, std::vector<int> cols);

  const std::vector<int>& rows() const { return rows_; }
  const std::vector<int>& cols() const { return cols_; }
  int size() const { return static_cast<int>(rows_.size()); }
  bool fits(Shape shape) const;
  bool has_row(int i) const;
  bool has_col(int j) const;

  /// "Δ_{1,2|2,3}"
  std::string label() const;

  friend bool operator==(const MinorSpec&, const MinorSpec&) = default;
  friend auto operator<=>(const MinorSpec&, const MinorSpec&) = default;

 private:
  std::vector<int> rows_;
  std::vector<int> cols_;
};

json minor_spec_to_json(const MinorSpec& s);
MinorSpec minor_spec_from_json(const json& j);

/// All minors of the shape with size in [1, max_size].
std::vector<MinorSpec> all_minors(Shape shape, int max_size);

Poly minor(const MinorSpec& spec, Shape shape);

/// Closed form of {x_kl, Delta_{I,J}}:
///   sum_q sign(i_q - k) x_{i_q l} Delta_{I(i_q -> k), J}
/// + sum_q sign(j_q - l) x_{k j_q} Delta_{I, J(j_q -> l)},
/// where the replaced index keeps the position of the one it replaces.
Poly minor_bracket(int k, int l, const MinorSpec& spec, Shape shape);

/// sign(I - k): 0 if k in I, +1 if k < min I, -1 if k > max I; undefined
/// (nullopt) when k falls strictly between elements of I.
std::optional<int> set_sign(const std::vector<int>& set, int k);

/// (sign(I-k) + sign(J-l)) x_kl Delta_{I,J} when both signs are defined and
/// the sum has absolute value <= 1; nullopt otherwise.
std::optional<Poly> lemma_sign_bracket(int k, int l, const MinorSpec& spec, Shape shape);

}  // namespace detflow
