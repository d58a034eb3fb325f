#include "bisheaf/cuspidal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace bisheaf {

std::vector<ClassIndex> EllipticSemimodule::index_set() const {
  std::vector<ClassIndex> out;
  out.reserve(modes.size());
  for (const Mode& mode : modes) out.push_back({mode.mu, mode.m});
  return out;
}

AmplitudeRule unit_amplitude() {
  return [](ClassIndex) { return 1.0; };
}

EllipticSemimodule compactify(const Semisheaf& s, const AmplitudeRule& rule, const CompactifyOptions& opts) {
  if (s.empty()) contract_violation("cannot compactify an empty semisheaf");
  EllipticSemimodule esm;
  esm.side = s.side();
  esm.source_level = s.level();
  esm.source_nature = s.nature();
  const std::int64_t n = s.tower()->modulus();
  for (const auto& [i, sec] : s.sections()) {
    if (opts.even_class && i.mu % 2 != 0) continue;
    double r = rule(i);
    if (!(r >= 0.0) || !std::isfinite(r))
      contract_violation("amplitude rule returned " + std::to_string(r) + " at " + to_string(i));
    esm.modes.push_back({i.mu, i.m, r, s.side() == Side::Left ? +1 : -1, i.mu * n});
  }
  if (esm.modes.empty()) contract_violation("no even classes to compactify");
  return esm;
}

std::complex<double> evaluate(const EllipticSemimodule& esm, double x) {
  std::complex<double> sum{0.0, 0.0};
  for (const Mode& mode : esm.modes)
    sum += mode.amplitude * std::polar(1.0, mode.sign * std::numbers::pi * mode.mu * x);
  return sum;
}

std::vector<double> bistring_modulus(const Mode& right_mode, const Mode& left_mode, const std::vector<double>& samples) {
  if (right_mode.sign != -1 || left_mode.sign != +1)
    contract_violation("a bistring pairs a right (sign -1) mode with a left (sign +1) mode");
  if (right_mode.mu != left_mode.mu)
    contract_violation("bistring modes have different class indices " + std::to_string(right_mode.mu) + " and " +
                       std::to_string(left_mode.mu));
  std::vector<double> out;
  out.reserve(samples.size());
  for (double x : samples) {
    auto r = right_mode.amplitude * std::polar(1.0, -std::numbers::pi * right_mode.mu * x);
    auto l = left_mode.amplitude * std::polar(1.0, std::numbers::pi * left_mode.mu * x);
    out.push_back(std::abs(r * l));
  }
  return out;
}

std::pair<EllipticSemimodule, EllipticSemimodule> split_modes(const EllipticSemimodule& esm,
                                                              const ReducePredicate& reduce) {
  EllipticSemimodule reduced = esm, rest = esm;
  reduced.modes.clear();
  rest.modes.clear();
  for (const Mode& mode : esm.modes) (reduce({mode.mu, mode.m}) ? reduced : rest).modes.push_back(mode);
  return {reduced, rest};
}

std::size_t CuspSide::pair_count() const {
  return (reduced ? reduced->pair_count() : 0) + (orthogonal ? orthogonal->pair_count() : 0);
}

bool LevelRecord::bijection_holds() const {
  std::set<ClassIndex> weil;
  for (const auto& d : weil_side) weil.insert(d.index);
  if (weil.size() != weil_side.size() || weil_side.size() != cusp_side.pair_count()) return false;
  std::set<ClassIndex> covered;
  for (const auto* part : {&cusp_side.reduced, &cusp_side.orthogonal}) {
    if (!*part) continue;
    if ((*part)->right.index_set() != (*part)->left.index_set()) return false;
    for (ClassIndex i : (*part)->left.index_set())
      if (!covered.insert(i).second) return false;
  }
  return covered == weil;
}

bool Correspondence::bijection_holds() const {
  return std::all_of(levels.begin(), levels.end(), [](const LevelRecord& l) { return l.bijection_holds(); });
}

std::optional<SemimodulePair> compactify_pair(const Bisemisheaf& b, const AmplitudeRule& rule,
                                              const CompactifyOptions& opts) {
  if (b.size() == 0) return std::nullopt;
  if (opts.even_class) {
    auto idx = b.index_set();
    if (std::none_of(idx.begin(), idx.end(), [](ClassIndex i) { return i.mu % 2 == 0; })) return std::nullopt;
  }
  return SemimodulePair{compactify(b.right(), rule, opts), compactify(b.left(), rule, opts)};
}

LevelRecord level_record(Level label, const std::optional<Bisemisheaf>& reduced,
                         const std::optional<Bisemisheaf>& orthogonal, const AmplitudeRule& rule,
                         const CompactifyOptions& opts) {
  LevelRecord rec;
  rec.label = label;
  std::vector<ClassDescriptor> weil;
  for (const auto* part : {&reduced, &orthogonal}) {
    if (!*part) continue;
    const Bisemisheaf& b = **part;
    for (ClassIndex i : b.index_set()) {
      if (opts.even_class && i.mu % 2 != 0) continue;
      weil.push_back({i, b.degree(i, Side::Right), b.degree(i, Side::Left)});
    }
  }
  std::sort(weil.begin(), weil.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  rec.weil_side = std::move(weil);
  if (reduced) rec.cusp_side.reduced = compactify_pair(*reduced, rule, opts);
  if (orthogonal) rec.cusp_side.orthogonal = compactify_pair(*orthogonal, rule, opts);
  return rec;
}

Correspondence lgc(const Bisemisheaf& b, const AmplitudeRule& rule, const CompactifyOptions& opts) {
  if (b.size() == 0) contract_violation("cannot compactify an empty bisemisheaf");
  Correspondence c;
  c.levels.push_back(level_record(b.level(), b, std::nullopt, rule, opts));
  return c;
}

Correspondence lggc_st(const Bisemisheaf& b, const ReducePredicate& reduce, int orth_dims, const AmplitudeRule& rule,
                       const CompactifyOptions& opts) {
  if (b.size() == 0) contract_violation("cannot compactify an empty bisemisheaf");
  auto [reduced, complementary] = endo_split(b, reduce);
  Bisemisheaf orthogonal = emergent_project(complementary, orth_dims);
  Correspondence c;
  c.levels.push_back(level_record(Level::ST, reduced, orthogonal, rule, opts));
  return c;
}

bool diagram_commutes(const Bisemisheaf& b, const ReducePredicate& reduce, int orth_dims, const AmplitudeRule& rule,
                      const CompactifyOptions& opts) {
  // Split, project, then compactify.
  Correspondence split_first = lggc_st(b, reduce, orth_dims, rule, opts);
  const CuspSide& cs = split_first.levels.front().cusp_side;

  // Compactify, then split the modes.
  auto whole = compactify_pair(b, rule, opts);
  if (!whole) return !cs.reduced && !cs.orthogonal;

  auto multiset = [](const std::optional<SemimodulePair>& p, Side s) {
    std::multiset<ClassIndex> out;
    if (p)
      for (ClassIndex i : (s == Side::Left ? p->left : p->right).index_set()) out.insert(i);
    return out;
  };
  for (Side s : {Side::Right, Side::Left}) {
    auto [red, orth] = split_modes(s == Side::Left ? whole->left : whole->right, reduce);
    auto ms = [](const EllipticSemimodule& e) {
      auto v = e.index_set();
      return std::multiset<ClassIndex>(v.begin(), v.end());
    };
    if (ms(red) != multiset(cs.reduced, s) || ms(orth) != multiset(cs.orthogonal, s)) return false;
  }
  return true;
}

}  // namespace bisheaf
