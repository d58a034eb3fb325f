#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bisheaf/sheaf.hpp"

namespace bisheaf {

/// One semicircle phasor amplitude·e^(sign·πiμx).
struct Mode {
  int mu = 1;
  int m = 1;
  double amplitude = 1.0;
  int sign = +1;           // +1 Left, -1 Right (contragredient)
  std::int64_t degree = 0;  // toroidal degree μ·N

  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Compactified cuspidal object: a finite exponential sum.
struct EllipticSemimodule {
  Side side = Side::Left;
  std::vector<Mode> modes;
  Level source_level = Level::ST;
  Nature source_nature = Nature::T;

  std::vector<ClassIndex> index_set() const;
};

using AmplitudeRule = std::function<double(ClassIndex)>;

AmplitudeRule unit_amplitude();

struct CompactifyOptions {
  /// Keep only even μ (closed strings); their toroidal degree is then 2μ'N for μ = 2μ'.
  bool even_class = false;
};

EllipticSemimodule compactify(const Semisheaf& s, const AmplitudeRule& rule, const CompactifyOptions& opts = {});

std::complex<double> evaluate(const EllipticSemimodule& esm, double x);

/// |r_R e^(-πiμx) · r_L e^(+πiμx)| at each sample.
std::vector<double> bistring_modulus(const Mode& right_mode, const Mode& left_mode, const std::vector<double>& samples);

/// Splits an already-compactified semimodule by the same predicate used on sections.
std::pair<EllipticSemimodule, EllipticSemimodule> split_modes(const EllipticSemimodule& esm,
                                                              const ReducePredicate& reduce);

struct SemimodulePair {
  EllipticSemimodule right;
  EllipticSemimodule left;

  std::size_t pair_count() const { return left.modes.size(); }
};

/// Weil-side descriptor of one 2-dimensional representative subspace.
struct ClassDescriptor {
  ClassIndex index;
  std::int64_t right_degree = 0;
  std::int64_t left_degree = 0;

  friend bool operator==(const ClassDescriptor&, const ClassDescriptor&) = default;
};

struct CuspSide {
  std::optional<SemimodulePair> reduced;
  std::optional<SemimodulePair> orthogonal;

  std::size_t pair_count() const;
};

struct LevelRecord {
  Level label = Level::ST;
  std::vector<ClassDescriptor> weil_side;
  CuspSide cusp_side;

  /// |weil_side| equals the number of compactified right/left mode pairs,
  /// and the right and left mode index sets agree.
  bool bijection_holds() const;
};

struct Correspondence {
  std::vector<LevelRecord> levels;
  bool bijection_holds() const;
};

/// Compactifies both halves of a bisemisheaf; nullopt when it has no sections
/// (or none survive the even-class filter).
std::optional<SemimodulePair> compactify_pair(const Bisemisheaf& b, const AmplitudeRule& rule,
                                              const CompactifyOptions& opts = {});

/// Assembles one level row: Weil descriptors over every class that is
/// compactified, `reduced` and `orthogonal` parts compactified separately.
LevelRecord level_record(Level label, const std::optional<Bisemisheaf>& reduced,
                         const std::optional<Bisemisheaf>& orthogonal, const AmplitudeRule& rule,
                         const CompactifyOptions& opts = {});

/// Single-level Langlands global correspondence.
Correspondence lgc(const Bisemisheaf& b, const AmplitudeRule& rule, const CompactifyOptions& opts = {});

/// LGGC_ST: reduced part Π(GL₂^(r)) plus the projected complementary part Π(GL₂^⊥).
Correspondence lggc_st(const Bisemisheaf& b, const ReducePredicate& reduce, int orth_dims,
                       const AmplitudeRule& rule, const CompactifyOptions& opts = {});

/// Split-then-compactify and compactify-then-split give identical mode index
/// multisets on both sides.
bool diagram_commutes(const Bisemisheaf& b, const ReducePredicate& reduce, int orth_dims, const AmplitudeRule& rule,
                      const CompactifyOptions& opts = {});

}  // namespace bisheaf
