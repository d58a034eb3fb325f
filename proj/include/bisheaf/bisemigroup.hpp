#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bisheaf/rational.hpp"
#include "bisheaf/tower.hpp"
#include "bisheaf/types.hpp"

namespace bisheaf {

using Mat2 = std::array<std::array<Rational, 2>, 2>;

/// Element of T₂ (Left, upper triangular) or T₂ᵗ (Right, lower triangular).
class TriangularElement {
 public:
  /// Throws ContractViolation if the matrix is not triangular for `side`.
  TriangularElement(Side side, Mat2 entries);
  static TriangularElement zero(Side side) { return {side, Mat2{}}; }

  Side side() const { return side_; }
  const Mat2& entries() const { return entries_; }

  friend bool operator==(const TriangularElement&, const TriangularElement&) = default;

 private:
  Side side_;
  Mat2 entries_;
};

/// Bielement g_R × g_L of the bilinear semigroup G_{R×L}.
struct Bielement {
  TriangularElement right;
  TriangularElement left;

  static Bielement zero() { return {TriangularElement::zero(Side::Right), TriangularElement::zero(Side::Left)}; }
  friend bool operator==(const Bielement&, const Bielement&) = default;
};

/// Cross binary operation: (g_Ri × g_Li) ⊻ (g_Rj × g_Lj) = (g_Ri + g_Rj) × (g_Li + g_Lj).
Bielement cross_compose(const Bielement& a, const Bielement& b);

/// Conjugacy class representatives (μ, m_μ) in lexicographic order.
std::vector<ClassIndex> class_representatives(const Tower& tower);

enum class TermKind { Free, Interaction };

struct LabeledTerm {
  Level right_label;
  Level left_label;
  TermKind kind;
  std::string payload;

  friend bool operator==(const LabeledTerm&, const LabeledTerm&) = default;
};

using LevelPart = std::pair<Level, std::string>;

/// Distributive expansion of (⊕ right parts) ⊗ (⊕ left parts). Free terms
/// (matching labels) come first, then interaction terms; each group is
/// ordered lexicographically by (right label, left label).
std::vector<LabeledTerm> expand_sum_product(const std::vector<LevelPart>& right_parts,
                                            const std::vector<LevelPart>& left_parts);

std::string to_string(TermKind k);

}  // namespace bisheaf
