#include "bisheaf/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

namespace bisheaf {

DeformedBundle deform(const Semisheaf& base) {
  if (!base.singular()) contract_violation("deformation needs a singular (φ*) semisheaf");
  if (base.empty()) contract_violation("deformation needs at least one section");
  std::optional<SingularityClass> cls;
  int nvars = 0;
  for (const auto& [i, sec] : base.sections()) {
    SingularityClass c = classify_germ(sec.germ);
    if (!is_catalogue(c.name))
      contract_violation("section " + to_string(i) + " carries a " + to_string(c.name) + " germ, not a catalogue one");
    if (cls && !(*cls == c)) contract_violation("sections carry different singularity classes");
    cls = c;
    nvars = sec.dims;
  }

  Unfolding u = versal_unfold(*cls);
  DeformedBundle d{base, {}, {}, {}, *cls};
  for (const auto& p : u.parameters) {
    Germ mono = p.monomial.with_nvars(nvars);
    std::vector<Section> fiber_secs, coeff_secs;
    for (const auto& [i, sec] : base.sections()) {
      fiber_secs.push_back({i, base.side(), mono, nvars, std::nullopt});
      coeff_secs.push_back({i, base.side(), Germ(nvars), nvars, std::nullopt});
    }
    d.fiber.push_back(base.with_sections(std::move(fiber_secs)).with_singular(false));
    d.coefficient_sheaves.push_back(base.with_sections(std::move(coeff_secs)).with_singular(false));
    d.slot_names.push_back(p.name);
  }
  return d;
}

BlowupResult blow_up(const DeformedBundle& d, const BlowupOptions& opts) {
  if (d.fiber.empty()) contract_violation("blowup of a bundle with an empty fiber");
  if (!(opts.fraction > 0.0 && opts.fraction <= 1.0)) invalid_config("blowup fraction must lie in (0, 1]");

  BlowupResult r{d.base, d.base, {}, {}};
  std::map<ClassIndex, Germ> glued;
  for (const auto& [i, sec] : d.base.sections()) glued.emplace(i, Germ(sec.dims));

  for (std::size_t k = 0; k < d.fiber.size(); ++k) {
    const Semisheaf& mono = d.fiber[k];
    auto detach = static_cast<std::size_t>(std::ceil(opts.fraction * static_cast<double>(mono.size())));
    std::vector<Section> residual, complementary;
    std::size_t n = 0;
    for (const auto& [i, sec] : mono.sections()) (n++ < detach ? complementary : residual).push_back(sec);
    Semisheaf comp = mono.with_sections(std::move(complementary)).with_tag(SplitTag::Complementary);
    // Tangent projection T_V keeps indices and germs; gluing sums over shared indices.
    for (const auto& [i, sec] : comp.sections()) glued.at(i) += sec.germ;
    r.detached.push_back({static_cast<int>(k + 1), d.slot_names[k],
                          mono.with_sections(std::move(residual)).with_tag(SplitTag::Reduced), std::move(comp)});
  }

  std::vector<Section> cover;
  for (const auto& [i, sec] : d.base.sections()) {
    const Germ& g = glued.at(i);
    cover.push_back({i, d.base.side(), g, sec.dims, std::nullopt});
    int base_deg = sec.germ.degree();
    double frac = base_deg <= 0 ? (g.is_zero() ? 0.0 : 1.0)
                                : static_cast<double>(std::max(g.degree(), 0)) / static_cast<double>(base_deg);
    r.coverage[i] = std::clamp(frac, 0.0, 1.0);
  }
  r.covering = d.base.with_sections(std::move(cover)).with_singular(false).with_tag(SplitTag::None);
  return r;
}

namespace {

bool has_cubic_x(const Semisheaf& s) {
  return std::any_of(s.sections().begin(), s.sections().end(),
                     [](const auto& kv) { return !kv.second.germ.coefficient({3, 0}).is_zero(); });
}

Semisheaf cubic_component(const Semisheaf& covering) {
  std::vector<Section> out;
  for (const auto& [i, sec] : covering.sections()) {
    Rational c = sec.germ.coefficient({3, 0});
    if (c.is_zero()) continue;
    Germ g = Germ::monomial(sec.dims, {3, 0}, c, sec.germ.max_degree());
    if (sec.dims == 2) g.add_term({0, 2}, 1);
    out.push_back({i, sec.side, g, sec.dims, std::nullopt});
  }
  return covering.with_sections(std::move(out)).with_singular(true);
}

}  // namespace

std::optional<SingularityClass> detect_resingularization(const BlowupResult& r) {
  if (has_cubic_x(r.covering)) return catalogue_class(SingularityName::Fold);
  return std::nullopt;
}

Semisheaf resingular_component(const BlowupResult& r) { return cubic_component(r.covering); }

Germ desingularize(const Germ& g) {
  Germ jet = g.homogeneous_range(0, 2);
  bool no_linear = jet.homogeneous_range(1, 1).is_zero();
  bool has_quadratic = !jet.homogeneous_range(2, 2).is_zero();
  if (no_linear && has_quadratic && hessian_rank(jet) < jet.nvars()) jet = jet.homogeneous_range(0, 1);
  return jet;
}

Semisheaf desingularize(const Semisheaf& s) {
  std::vector<Section> out = s.section_list();
  for (auto& sec : out) sec.germ = desingularize(sec.germ);
  return s.with_sections(std::move(out)).with_singular(false);
}

Bisemisheaf desingularize(const Bisemisheaf& b) { return {desingularize(b.right()), desingularize(b.left())}; }

std::pair<Semisheaf, Semisheaf> time_space_lift(const Semisheaf& space, const ReducePredicate& reduce, int orth_dims) {
  if (space.nature() != Nature::Sp)
    contract_violation("time/space lift needs an Sp semisheaf, got " + to_string(space.nature()));
  auto [reduced, complementary] = endo_split(space, reduce);
  return {emergent_project(complementary, orth_dims), std::move(reduced)};
}

std::pair<Semisheaf, Semisheaf> time_space_lift(const Semisheaf& space) {
  return time_space_lift(space, default_reduce(*space.tower()));
}

std::pair<Bisemisheaf, Bisemisheaf> time_space_lift(const Bisemisheaf& space, const ReducePredicate& reduce,
                                                    int orth_dims) {
  auto [rt, rs] = time_space_lift(space.right(), reduce, orth_dims);
  auto [lt, ls] = time_space_lift(space.left(), reduce, orth_dims);
  return {Bisemisheaf(std::move(rt), std::move(lt)), Bisemisheaf(std::move(rs), std::move(ls))};
}

std::vector<ClassIndex> LevelEntry::index_set() const {
  std::set<ClassIndex> all;
  for (ClassIndex i : time.index_set()) all.insert(i);
  for (ClassIndex i : space.index_set()) all.insert(i);
  return {all.begin(), all.end()};
}

std::vector<Level> LevelStack::labels() const {
  std::vector<Level> out;
  for (const auto& l : levels) out.push_back(l.label);
  return out;
}

bool LevelStack::embedding_holds() const {
  for (std::size_t k = 1; k < levels.size(); ++k) {
    auto lower = levels[k - 1].index_set();
    auto upper = levels[k].index_set();
    std::set<ClassIndex> upper_set(upper.begin(), upper.end());
    std::map<ClassIndex, int> hits;
    for (const auto& [lo, up] : levels[k].covers) {
      if (!upper_set.count(up)) return false;
      ++hits[lo];
    }
    if (hits.size() != lower.size()) return false;
    for (ClassIndex i : lower)
      if (hits[i] != 1) return false;
  }
  return true;
}

int level_count_for(const std::optional<SingularityClass>& sing) {
  if (!sing || !is_catalogue(sing->name)) return 1;
  if (sing->corank == 1 && sing->codim == 3) return 3;
  if ((sing->corank == 1 && sing->codim < 3) || (sing->corank == 2 && sing->codim <= 3)) return 2;
  return 1;
}

namespace {

Semisheaf truncate(const Semisheaf& s, const std::shared_ptr<const Tower>& tower) {
  std::vector<Section> kept;
  for (const auto& [i, sec] : s.sections())
    if (tower->contains(i)) kept.push_back(sec);
  return s.with_sections(std::move(kept)).with_tower(tower);
}

ClassIndex cover_target(ClassIndex i, const Tower& upper) {
  if (upper.contains(i)) return i;
  int mu = std::min(i.mu, upper.depth());
  return {mu, std::min(i.m, upper.multiplicity(mu))};
}

std::string slot_list(const DeformedBundle& d) {
  std::string out = "[";
  for (std::size_t k = 0; k < d.fiber.size(); ++k) {
    if (k) out += ", ";
    out += d.fiber[k].sections().begin()->second.germ.to_string();
  }
  return out + "]";
}

struct SideBlowup {
  BlowupResult right;
  BlowupResult left;
  std::string fiber;
};

SideBlowup blow_up_both(const Bisemisheaf& singular, const BlowupOptions& opts) {
  DeformedBundle dr = deform(singular.right());
  DeformedBundle dl = deform(singular.left());
  return {blow_up(dr, opts), blow_up(dl, opts), slot_list(dl)};
}

}  // namespace

LevelStack generate_levels(const Bisemisheaf& base, const std::optional<SingularityClass>& sing,
                           const LevelOptions& opts) {
  if (base.level() != Level::ST) contract_violation("level generation starts from an ST bisemisheaf");
  if (base.nature() != Nature::Sp) contract_violation("level generation needs the Sp space bisemisheaf");
  if (sing && sing->name == SingularityName::Unclassified)
    contract_violation("cannot generate levels from an unclassified singularity");
  if (base.size() == 0) contract_violation("level generation needs a non-empty bisemisheaf");

  const auto base_tower = base.right().tower();
  ReducePredicate reduce = opts.reduce ? opts.reduce : default_reduce(*base_tower);
  int mg_depth = opts.mg_depth.value_or(base_tower->depth());
  int m_depth = opts.m_depth.value_or(mg_depth);
  if (mg_depth < 1 || mg_depth > base_tower->depth()) invalid_config("MG covering depth must lie in [1, base depth]");
  if (m_depth < 1 || m_depth > mg_depth) invalid_config("M covering depth must lie in [1, MG covering depth]");

  LevelStack stack;
  stack.input = sing;
  const bool degenerate = sing && is_catalogue(sing->name);
  stack.rule = level_count_for(sing);

  auto lift_level = [&](Level label, const Bisemisheaf& full, bool singular) {
    auto [time, space] = time_space_lift(full, reduce, opts.orth_dims);
    return LevelEntry{label, std::move(time), std::move(space), singular, {}, {}};
  };

  Bisemisheaf st_space = degenerate ? inject_singularity(base, *sing) : base;
  if (degenerate) {
    stack.trace.push_back("ST: injected " + to_string(sing->name) + " (corank " + std::to_string(sing->corank) +
                          ", codim " + std::to_string(sing->codim) + ") germ " +
                          st_space.left().sections().begin()->second.germ.to_string());
  } else {
    stack.trace.push_back("ST: no degenerate singularity");
  }
  stack.levels.push_back(lift_level(Level::ST, st_space, degenerate));
  if (stack.rule == 1) return stack;

  auto cover_level = [&](Level label, const Bisemisheaf& singular, int depth, const char* name) {
    SideBlowup bl = blow_up_both(singular, opts.blowup);
    auto tower = std::make_shared<const Tower>(singular.tower().truncated(std::min(depth, singular.tower().depth())));
    Bisemisheaf covering(truncate(bl.right.covering, tower).with_level(label),
                         truncate(bl.left.covering, tower).with_level(label));
    stack.trace.push_back(std::string(name) + ": deformed fiber " + bl.fiber + ", blowup covering " +
                          covering.left().sections().begin()->second.germ.to_string() + " over " +
                          std::to_string(covering.size()) + " sections");
    return std::pair(std::move(bl), std::move(covering));
  };

  auto attach_covers = [&](LevelEntry& upper, const LevelEntry& lower, const Bisemisheaf& covering,
                           const BlowupResult& left_blowup) {
    for (ClassIndex i : lower.index_set()) upper.covers.emplace_back(i, cover_target(i, covering.tower()));
    for (const auto& [i, f] : left_blowup.coverage)
      if (covering.tower().contains(i)) upper.coverage[i] = f;
  };

  auto [mg_blowup, mg_cover] = cover_level(Level::MG, st_space, mg_depth, "MG");
  std::optional<SingularityClass> resing = detect_resingularization(mg_blowup.left);
  LevelEntry mg = lift_level(Level::MG, mg_cover, resing.has_value());
  attach_covers(mg, stack.levels.back(), mg_cover, mg_blowup.left);
  stack.levels.push_back(std::move(mg));
  if (stack.rule == 2) return stack;

  if (!resing) contract_violation("codimension-3 cascade produced no resingularization");
  stack.resingularization = resing;
  Bisemisheaf cubic(cubic_component(mg_cover.right()), cubic_component(mg_cover.left()));
  stack.trace.push_back("MG: detected resingularization " + to_string(resing->name) + " on the x^3 component (" +
                        cubic.left().sections().begin()->second.germ.to_string() + ")");
  auto [m_blowup, m_cover] = cover_level(Level::M, cubic, m_depth, "M");
  LevelEntry m = lift_level(Level::M, m_cover, false);
  attach_covers(m, stack.levels.back(), m_cover, m_blowup.left);
  stack.levels.push_back(std::move(m));
  return stack;
}

}  // namespace bisheaf
