#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bisheaf/types.hpp"

namespace bisheaf {

/// Parameters of a tower of pseudoramified completions. Empty multiplicity
/// sequences mean "constantly 1".
struct TowerConfig {
  std::int64_t quantum_modulus = 1;  // N
  std::int64_t offset = 0;           // the uniform residue `*`, 0 <= offset < N
  int depth = 1;                     // largest class index μ
  std::vector<int> multiplicity;          // m(μ), indexed from μ = 1
  std::vector<int> complex_multiplicity;  // m^(μ)

  friend bool operator==(const TowerConfig&, const TowerConfig&) = default;
};

enum class CompletionKind { Real, Complex };

struct Completion {
  Side side = Side::Left;
  CompletionKind kind = CompletionKind::Real;
  int mu = 1;
  std::optional<int> m;  // set for real completions only
  std::int64_t degree = 0;

  friend bool operator==(const Completion&, const Completion&) = default;
};

/// Immutable index rectangle {(μ, m) : 1 <= μ <= depth, 1 <= m <= m(μ)} with
/// degree bookkeeping. Real degree is offset + μ·N; complex degree is
/// offset + μ·N·m^(μ).
class Tower {
 public:
  explicit Tower(TowerConfig config);

  const TowerConfig& config() const { return config_; }
  std::int64_t modulus() const { return config_.quantum_modulus; }
  std::int64_t offset() const { return config_.offset; }
  int depth() const { return config_.depth; }
  int multiplicity(int mu) const;
  int complex_multiplicity(int mu) const;

  bool contains(ClassIndex index) const;
  std::int64_t real_degree(ClassIndex index) const;
  std::int64_t complex_degree(int mu) const;

  /// The real place v_μ: all equivalent completions at class μ.
  std::vector<ClassIndex> place(int mu, Side side) const;
  /// Every (μ, m) in lexicographic order.
  std::vector<ClassIndex> indices() const;
  std::size_t class_count() const;

  std::vector<Completion> real_completions(Side side) const;
  std::vector<Completion> complex_completions(Side side) const;

  /// Same modulus, offset and multiplicities, cut at a smaller depth.
  Tower truncated(int depth) const;

  friend bool operator==(const Tower& a, const Tower& b) { return a.config_ == b.config_; }

 private:
  void check_mu(int mu) const;
  TowerConfig config_;
};

Tower build_tower(const TowerConfig& config);

}  // namespace bisheaf
