#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bisheaf/sheaf.hpp"
#include "bisheaf/singularity.hpp"

namespace bisheaf {

/// Versal deformation of a singular semisheaf as a contracting fiber bundle:
/// one monomial semisheaf φ(x^i) per unfolding slot, each over the base's
/// index set, projected on a coefficient semisheaf φ(a_i) / φ(b_i).
struct DeformedBundle {
  Semisheaf base;
  std::vector<Semisheaf> fiber;
  std::vector<Semisheaf> coefficient_sheaves;
  std::vector<std::string> slot_names;
  SingularityClass cls;
};

DeformedBundle deform(const Semisheaf& base);

struct DetachedMonomial {
  int i = 0;  // 1-based slot position
  std::string slot;
  Semisheaf residual_part;       // φ(x^i)_r, still attached to its coefficient sheaf
  Semisheaf complementary_part;  // φ(x^i)_I, disconnected and projected to the tangent space
};

struct BlowupResult {
  Semisheaf residual;  // the φ* base left behind
  Semisheaf covering;  // spreading-out glued monomials, one section per base section
  std::vector<DetachedMonomial> detached;
  /// deg(covering germ) / deg(base germ), clamped to [0, 1]. Report-only.
  std::map<ClassIndex, double> coverage;
};

struct BlowupOptions {
  /// Share of each monomial sheaf that is disconnected (in class order).
  /// 1 is the maximal blowup; smaller values are not covered by invariants.
  double fraction = 1.0;
};

BlowupResult blow_up(const DeformedBundle& d, const BlowupOptions& opts = {});

/// Fold when a covering germ carries a nonzero x³ term, otherwise nullopt.
std::optional<SingularityClass> detect_resingularization(const BlowupResult& r);
/// The singular semisheaf φ*(x³) read off the covering: each section holds its x³ term.
Semisheaf resingular_component(const BlowupResult& r);

/// Keeps the Morse/linear jet: drops every term of degree >= 3, and drops a
/// degenerate quadratic part when there is no linear part. Idempotent.
Germ desingularize(const Germ& g);
Semisheaf desingularize(const Semisheaf& s);
Bisemisheaf desingularize(const Bisemisheaf& b);

/// γ_{r→t} ∘ E on an Sp semisheaf: returns (Tp time part, Sp residual part).
std::pair<Semisheaf, Semisheaf> time_space_lift(const Semisheaf& space, const ReducePredicate& reduce,
                                                int orth_dims = 3);
std::pair<Semisheaf, Semisheaf> time_space_lift(const Semisheaf& space);
std::pair<Bisemisheaf, Bisemisheaf> time_space_lift(const Bisemisheaf& space, const ReducePredicate& reduce,
                                                    int orth_dims = 3);

struct LevelEntry {
  Level label = Level::ST;
  Bisemisheaf time;   // Tp, orthogonal part
  Bisemisheaf space;  // Sp, reduced part
  bool singular = false;
  /// (lower-level index, index of the section of this level covering it); empty for ST.
  std::vector<std::pair<ClassIndex, ClassIndex>> covers;
  std::map<ClassIndex, double> coverage;

  std::vector<ClassIndex> index_set() const;
};

struct LevelStack {
  std::vector<LevelEntry> levels;
  std::optional<SingularityClass> input;
  int rule = 1;  // which level-decision rule fired (1, 2 or 3)
  std::optional<SingularityClass> resingularization;
  std::vector<std::string> trace;

  std::vector<Level> labels() const;
  /// Every lower-level section is covered by exactly one section of the next level.
  bool embedding_holds() const;
};

struct LevelOptions {
  ReducePredicate reduce;  // empty: default_reduce
  int orth_dims = 3;
  std::optional<int> mg_depth;  // covering tower depths, <= base depth
  std::optional<int> m_depth;
  BlowupOptions blowup;
};

/// Level decision rules: no singularity → [ST]; corank 1 with codim < 3 or
/// corank 2 with codim <= 3 → [ST, MG]; corank 1 with codim 3 → [ST, MG, M].
/// `base` is the ST space bisemisheaf (nature Sp).
LevelStack generate_levels(const Bisemisheaf& base, const std::optional<SingularityClass>& sing,
                           const LevelOptions& opts = {});

/// The number of levels the decision rules assign to a class.
int level_count_for(const std::optional<SingularityClass>& sing);

}  // namespace bisheaf
