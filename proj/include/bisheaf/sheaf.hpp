#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "bisheaf/germ.hpp"
#include "bisheaf/tower.hpp"
#include "bisheaf/types.hpp"

namespace bisheaf {

/// Marks which side of an endomorphism split a semisheaf came from.
enum class SplitTag {
  None,
  Reduced,        // (r)
  Complementary,  // (I)
  Orthogonal,     // ⊥, after the emergent projection
};

std::string to_string(SplitTag t);

struct Section {
  ClassIndex index;
  Side side = Side::Left;
  Germ germ;
  int dims = 1;
  std::optional<char> orth_axis;

  friend bool operator==(const Section&, const Section&) = default;
};

/// Germ-valued sections over the conjugacy classes of one tower side.
class Semisheaf {
 public:
  Semisheaf(std::shared_ptr<const Tower> tower, Side side, Level level, Nature nature,
            std::vector<Section> sections, SplitTag tag = SplitTag::None, bool singular = false);

  const std::shared_ptr<const Tower>& tower() const { return tower_; }
  Side side() const { return side_; }
  Level level() const { return level_; }
  Nature nature() const { return nature_; }
  SplitTag tag() const { return tag_; }
  /// True for the φ* (singular) semisheaves produced by singularity injection.
  bool singular() const { return singular_; }

  const std::map<ClassIndex, Section>& sections() const { return sections_; }
  std::size_t size() const { return sections_.size(); }
  bool empty() const { return sections_.empty(); }
  bool contains(ClassIndex i) const { return sections_.count(i) != 0; }
  const Section& at(ClassIndex i) const;
  std::vector<ClassIndex> index_set() const;
  std::vector<Section> section_list() const;

  Semisheaf with_sections(std::vector<Section> sections) const;
  Semisheaf with_level(Level level) const;
  Semisheaf with_nature(Nature nature) const;
  Semisheaf with_tag(SplitTag tag) const;
  Semisheaf with_singular(bool singular) const;
  Semisheaf with_tower(std::shared_ptr<const Tower> tower) const;

  friend bool operator==(const Semisheaf& a, const Semisheaf& b);

 private:
  std::shared_ptr<const Tower> tower_;
  Side side_;
  Level level_;
  Nature nature_;
  SplitTag tag_;
  bool singular_;
  std::map<ClassIndex, Section> sections_;
};

/// Right semisheaf tensored with its matching left semisheaf.
class Bisemisheaf {
 public:
  /// Throws ContractViolation unless sides are Right/Left with identical
  /// index sets, level and nature.
  Bisemisheaf(Semisheaf right, Semisheaf left);

  const Semisheaf& right() const { return right_; }
  const Semisheaf& left() const { return left_; }
  const Semisheaf& side(Side s) const { return s == Side::Left ? left_ : right_; }
  Level level() const { return right_.level(); }
  Nature nature() const { return right_.nature(); }
  std::size_t size() const { return right_.size(); }
  std::vector<ClassIndex> index_set() const { return right_.index_set(); }
  const Tower& tower() const { return *right_.tower(); }

  /// Degree of the completion carrying the bisection at `i` on side `s`.
  std::int64_t degree(ClassIndex i, Side s) const;

  friend bool operator==(const Bisemisheaf&, const Bisemisheaf&) = default;

 private:
  Semisheaf right_;
  Semisheaf left_;
};

using GermTemplate = std::function<std::optional<Germ>(ClassIndex)>;
using ReducePredicate = std::function<bool(ClassIndex)>;

/// Constant template.
GermTemplate constant_template(Germ g);

Semisheaf attach_sections(std::shared_ptr<const Tower> tower, Side side, Level level, Nature nature,
                          const GermTemplate& germ_template);

Bisemisheaf tensor(const Semisheaf& right, const Semisheaf& left);

/// One basis pairing e_α ⊗ f_β attached to a bisection.
struct BasisPairing {
  ClassIndex index;
  int alpha;
  int beta;
  friend auto operator<=>(const BasisPairing&, const BasisPairing&) = default;
};

struct SplitResult {
  std::vector<BasisPairing> diagonal;      // α = β
  std::vector<BasisPairing> off_diagonal;  // α ≠ β
};

SplitResult split_diag_offdiag(const Bisemisheaf& b);

/// μ <= ⌈depth/2⌉.
ReducePredicate default_reduce(const Tower& tower);

/// E_L / E_R: partitions the index set into a reduced (r) and a complementary (I) semisheaf.
std::pair<Semisheaf, Semisheaf> endo_split(const Semisheaf& s, const ReducePredicate& reduce);
std::pair<Bisemisheaf, Bisemisheaf> endo_split(const Bisemisheaf& b, const ReducePredicate& reduce);

/// γ: maps a complementary (I) semisheaf into an orthogonal (⊥) one of the
/// given dimension (2 or 3), flipping its nature between time and space.
Semisheaf emergent_project(const Semisheaf& complementary, int target_dims);
Bisemisheaf emergent_project(const Bisemisheaf& complementary, int target_dims);

Nature flipped(Nature n);

/// Differential shift: T→Tp, S→Sp, every germ replaced by scale·∂f/∂x.
Semisheaf shift(const Semisheaf& s, const Rational& scale = 1);
Bisemisheaf shift(const Bisemisheaf& b, const Rational& scale = 1);

/// Moves the bisection at `at` from class μ to μ+1 (create) or μ-1
/// (annihilate) on both sides at once.
Bisemisheaf create_biquantum(const Bisemisheaf& b, ClassIndex at);
Bisemisheaf annihilate_biquantum(const Bisemisheaf& b, ClassIndex at);

/// Compactification map c: the m(μ) one-dimensional sections of place μ
/// become one two-dimensional section g(x, y) = Σ_m f_m(x)·y^(m-1) indexed (μ, 1).
Semisheaf glue_places(const Semisheaf& s);
/// Inverse of glue_places: reads f_m back from the y^(m-1) coefficients.
Semisheaf unglue_places(const Semisheaf& s);

}  // namespace bisheaf
