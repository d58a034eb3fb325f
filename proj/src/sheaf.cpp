#include "bisheaf/sheaf.hpp"

#include <algorithm>
#include <string>

namespace bisheaf {

std::string to_string(SplitTag t) {
  switch (t) {
    case SplitTag::None: return "none";
    case SplitTag::Reduced: return "r";
    case SplitTag::Complementary: return "I";
    case SplitTag::Orthogonal: return "perp";
  }
  return "?";
}

Semisheaf::Semisheaf(std::shared_ptr<const Tower> tower, Side side, Level level, Nature nature,
                     std::vector<Section> sections, SplitTag tag, bool singular)
    : tower_(std::move(tower)), side_(side), level_(level), nature_(nature), tag_(tag), singular_(singular) {
  if (!tower_) contract_violation("semisheaf requires a tower");
  for (auto& s : sections) {
    if (!tower_->contains(s.index))
      contract_violation("section index " + to_string(s.index) + " outside the tower rectangle");
    if (s.side != side_) contract_violation("section side differs from semisheaf side");
    if (s.dims != s.germ.nvars())
      contract_violation("section at " + to_string(s.index) + " has dims " + std::to_string(s.dims) +
                         " but a " + std::to_string(s.germ.nvars()) + "-variable germ");
    ClassIndex key = s.index;
    if (!sections_.emplace(key, std::move(s)).second)
      contract_violation("duplicate section at " + to_string(key));
  }
}

const Section& Semisheaf::at(ClassIndex i) const {
  auto it = sections_.find(i);
  if (it == sections_.end()) contract_violation("no section at " + to_string(i));
  return it->second;
}

std::vector<ClassIndex> Semisheaf::index_set() const {
  std::vector<ClassIndex> out;
  out.reserve(sections_.size());
  for (const auto& [i, s] : sections_) out.push_back(i);
  return out;
}

std::vector<Section> Semisheaf::section_list() const {
  std::vector<Section> out;
  out.reserve(sections_.size());
  for (const auto& [i, s] : sections_) out.push_back(s);
  return out;
}

Semisheaf Semisheaf::with_sections(std::vector<Section> sections) const {
  return {tower_, side_, level_, nature_, std::move(sections), tag_, singular_};
}
Semisheaf Semisheaf::with_level(Level level) const {
  Semisheaf s = *this;
  s.level_ = level;
  return s;
}
Semisheaf Semisheaf::with_nature(Nature nature) const {
  Semisheaf s = *this;
  s.nature_ = nature;
  return s;
}
Semisheaf Semisheaf::with_tag(SplitTag tag) const {
  Semisheaf s = *this;
  s.tag_ = tag;
  return s;
}
Semisheaf Semisheaf::with_singular(bool singular) const {
  Semisheaf s = *this;
  s.singular_ = singular;
  return s;
}
Semisheaf Semisheaf::with_tower(std::shared_ptr<const Tower> tower) const {
  return {std::move(tower), side_, level_, nature_, section_list(), tag_, singular_};
}

bool operator==(const Semisheaf& a, const Semisheaf& b) {
  return *a.tower_ == *b.tower_ && a.side_ == b.side_ && a.level_ == b.level_ && a.nature_ == b.nature_ &&
         a.tag_ == b.tag_ && a.singular_ == b.singular_ && a.sections_ == b.sections_;
}

Bisemisheaf::Bisemisheaf(Semisheaf right, Semisheaf left) : right_(std::move(right)), left_(std::move(left)) {
  if (right_.side() != Side::Right || left_.side() != Side::Left)
    contract_violation("bisemisheaf needs a Right semisheaf tensored with a Left semisheaf");
  if (right_.level() != left_.level()) contract_violation("bisemisheaf level tags differ");
  if (right_.nature() != left_.nature()) contract_violation("bisemisheaf nature tags differ");
  if (right_.index_set() != left_.index_set()) contract_violation("bisemisheaf index sets differ");
}

std::int64_t Bisemisheaf::degree(ClassIndex i, Side s) const {
  const Semisheaf& half = side(s);
  half.at(i);
  return half.tower()->real_degree(i);
}

GermTemplate constant_template(Germ g) {
  return [g = std::move(g)](ClassIndex) -> std::optional<Germ> { return g; };
}

Semisheaf attach_sections(std::shared_ptr<const Tower> tower, Side side, Level level, Nature nature,
                          const GermTemplate& germ_template) {
  if (!tower) contract_violation("attach_sections requires a tower");
  std::vector<Section> sections;
  for (ClassIndex i : tower->indices()) {
    std::optional<Germ> g = germ_template(i);
    if (!g) contract_violation("germ template undefined at class " + to_string(i));
    sections.push_back({i, side, *g, g->nvars(), std::nullopt});
  }
  return {std::move(tower), side, level, nature, std::move(sections)};
}

Bisemisheaf tensor(const Semisheaf& right, const Semisheaf& left) { return {right, left}; }

SplitResult split_diag_offdiag(const Bisemisheaf& b) {
  SplitResult r;
  for (ClassIndex i : b.index_set()) {
    for (int alpha = 1; alpha <= 2; ++alpha) {
      for (int beta = 1; beta <= 2; ++beta) {
        (alpha == beta ? r.diagonal : r.off_diagonal).push_back({i, alpha, beta});
      }
    }
  }
  return r;
}

ReducePredicate default_reduce(const Tower& tower) {
  int half = (tower.depth() + 1) / 2;
  return [half](ClassIndex i) { return i.mu <= half; };
}

std::pair<Semisheaf, Semisheaf> endo_split(const Semisheaf& s, const ReducePredicate& reduce) {
  std::vector<Section> reduced, complementary;
  for (const auto& [i, sec] : s.sections()) (reduce(i) ? reduced : complementary).push_back(sec);
  return {s.with_sections(std::move(reduced)).with_tag(SplitTag::Reduced),
          s.with_sections(std::move(complementary)).with_tag(SplitTag::Complementary)};
}

std::pair<Bisemisheaf, Bisemisheaf> endo_split(const Bisemisheaf& b, const ReducePredicate& reduce) {
  auto [rr, rc] = endo_split(b.right(), reduce);
  auto [lr, lc] = endo_split(b.left(), reduce);
  return {Bisemisheaf(std::move(rr), std::move(lr)), Bisemisheaf(std::move(rc), std::move(lc))};
}

Nature flipped(Nature n) {
  switch (n) {
    case Nature::T: return Nature::S;
    case Nature::S: return Nature::T;
    case Nature::Tp: return Nature::Sp;
    case Nature::Sp: return Nature::Tp;
  }
  return n;
}

Semisheaf emergent_project(const Semisheaf& complementary, int target_dims) {
  if (complementary.tag() != SplitTag::Complementary)
    contract_violation("emergent projection needs a complementary (I) semisheaf, got tag '" +
                       to_string(complementary.tag()) + "'");
  if (target_dims != 2 && target_dims != 3) invalid_config("orthogonal complement must be 2- or 3-dimensional");
  std::vector<Section> out = complementary.section_list();
  for (auto& s : out) s.orth_axis = target_dims == 3 ? 'z' : 'y';
  return complementary.with_sections(std::move(out))
      .with_tag(SplitTag::Orthogonal)
      .with_nature(flipped(complementary.nature()));
}

Bisemisheaf emergent_project(const Bisemisheaf& complementary, int target_dims) {
  return {emergent_project(complementary.right(), target_dims), emergent_project(complementary.left(), target_dims)};
}

Semisheaf shift(const Semisheaf& s, const Rational& scale) {
  Nature next;
  if (s.nature() == Nature::T) {
    next = Nature::Tp;
  } else if (s.nature() == Nature::S) {
    next = Nature::Sp;
  } else {
    contract_violation("semisheaf is already shifted (nature " + to_string(s.nature()) + ")");
  }
  std::vector<Section> out = s.section_list();
  for (auto& sec : out) sec.germ = sec.germ.derivative(0) * scale;
  return s.with_sections(std::move(out)).with_nature(next);
}

Bisemisheaf shift(const Bisemisheaf& b, const Rational& scale) {
  return {shift(b.right(), scale), shift(b.left(), scale)};
}

namespace {

Semisheaf move_section(const Semisheaf& s, ClassIndex from, ClassIndex to) {
  std::vector<Section> out;
  for (const auto& [i, sec] : s.sections()) {
    Section copy = sec;
    if (i == from) copy.index = to;
    out.push_back(std::move(copy));
  }
  return s.with_sections(std::move(out));
}

Bisemisheaf requantize(const Bisemisheaf& b, ClassIndex at, int delta) {
  if (!b.right().contains(at)) contract_violation("no bisection at " + to_string(at));
  ClassIndex target{at.mu + delta, at.m};
  if (target.mu < 1) contract_violation("cannot annihilate a biquantum at mu=1");
  if (target.mu > b.tower().depth())
    contract_violation("creating a biquantum at " + to_string(at) + " exceeds tower depth " +
                       std::to_string(b.tower().depth()));
  if (!b.tower().contains(target))
    contract_violation("target class " + to_string(target) + " is outside the tower rectangle");
  if (b.right().contains(target)) contract_violation("target class " + to_string(target) + " is occupied");
  return {move_section(b.right(), at, target), move_section(b.left(), at, target)};
}

}  // namespace

Bisemisheaf create_biquantum(const Bisemisheaf& b, ClassIndex at) { return requantize(b, at, +1); }

Bisemisheaf annihilate_biquantum(const Bisemisheaf& b, ClassIndex at) { return requantize(b, at, -1); }

Semisheaf glue_places(const Semisheaf& s) {
  std::map<int, std::vector<const Section*>> by_place;
  for (const auto& [i, sec] : s.sections()) {
    if (sec.dims != 1) contract_violation("gluing needs one-dimensional sections");
    by_place[i.mu].push_back(&sec);
  }
  std::vector<Section> out;
  for (const auto& [mu, secs] : by_place) {
    int max_deg = 0;
    for (const Section* sec : secs) max_deg = std::max(max_deg, sec->germ.max_degree() + sec->index.m - 1);
    Germ g(2, max_deg);
    for (const Section* sec : secs)
      for (const auto& [e, c] : sec->germ.terms()) g.add_term({e[0], sec->index.m - 1}, c);
    out.push_back({{mu, 1}, s.side(), g, 2, std::nullopt});
  }
  return s.with_sections(std::move(out));
}

Semisheaf unglue_places(const Semisheaf& s) {
  std::vector<Section> out;
  for (const auto& [i, sec] : s.sections()) {
    if (sec.dims != 2 || i.m != 1) contract_violation("ungluing needs two-dimensional place sections");
    for (int m = 1; m <= s.tower()->multiplicity(i.mu); ++m) {
      Germ f(1, sec.germ.max_degree());
      for (const auto& [e, c] : sec.germ.terms())
        if (e[1] == m - 1) f.add_term({e[0], 0}, c);
      out.push_back({{i.mu, m}, s.side(), f, 1, std::nullopt});
    }
  }
  return s.with_sections(std::move(out));
}

}  // namespace bisheaf
