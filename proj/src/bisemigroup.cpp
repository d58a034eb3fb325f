#include "bisheaf/bisemigroup.hpp"

#include <algorithm>
#include <set>

namespace bisheaf {

TriangularElement::TriangularElement(Side side, Mat2 entries) : side_(side), entries_(entries) {
  if (side == Side::Left && !entries_[1][0].is_zero())
    contract_violation("left bisemigroup element must be upper triangular");
  if (side == Side::Right && !entries_[0][1].is_zero())
    contract_violation("right bisemigroup element must be lower triangular");
}

namespace {

TriangularElement add(const TriangularElement& a, const TriangularElement& b, Side expected) {
  if (a.side() != expected || b.side() != expected)
    contract_violation("cross composition: " + to_string(expected) + " component carries a " +
                       to_string(a.side() != expected ? a.side() : b.side()) + " tag");
  Mat2 sum;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) sum[r][c] = a.entries()[r][c] + b.entries()[r][c];
  return {expected, sum};
}

}  // namespace

Bielement cross_compose(const Bielement& a, const Bielement& b) {
  return {add(a.right, b.right, Side::Right), add(a.left, b.left, Side::Left)};
}

std::vector<ClassIndex> class_representatives(const Tower& tower) { return tower.indices(); }

std::vector<LabeledTerm> expand_sum_product(const std::vector<LevelPart>& right_parts,
                                            const std::vector<LevelPart>& left_parts) {
  if (right_parts.empty() || left_parts.empty())
    contract_violation("expand_sum_product needs non-empty right and left parts");
  auto check_distinct = [](const std::vector<LevelPart>& parts, const char* side) {
    std::set<Level> seen;
    for (const auto& p : parts)
      if (!seen.insert(p.first).second)
        contract_violation(std::string("duplicate level tag ") + to_string(p.first) + " on " + side + " side");
  };
  check_distinct(right_parts, "right");
  check_distinct(left_parts, "left");

  std::vector<LabeledTerm> free_terms, interaction_terms;
  for (const auto& [rl, rp] : right_parts) {
    for (const auto& [ll, lp] : left_parts) {
      LabeledTerm t{rl, ll, rl == ll ? TermKind::Free : TermKind::Interaction, rp + " (x) " + lp};
      (t.kind == TermKind::Free ? free_terms : interaction_terms).push_back(std::move(t));
    }
  }
  auto by_labels = [](const LabeledTerm& a, const LabeledTerm& b) {
    return std::pair(a.right_label, a.left_label) < std::pair(b.right_label, b.left_label);
  };
  std::sort(free_terms.begin(), free_terms.end(), by_labels);
  std::sort(interaction_terms.begin(), interaction_terms.end(), by_labels);
  free_terms.insert(free_terms.end(), interaction_terms.begin(), interaction_terms.end());
  return free_terms;
}

std::string to_string(TermKind k) { return k == TermKind::Free ? "Free" : "Interaction"; }

}  // namespace bisheaf
