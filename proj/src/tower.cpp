#include "bisheaf/tower.hpp"

#include <string>

namespace bisheaf {

Tower::Tower(TowerConfig config) : config_(std::move(config)) {
  if (config_.quantum_modulus < 1) invalid_config("quantum_modulus must be >= 1");
  if (config_.offset < 0 || config_.offset >= config_.quantum_modulus)
    invalid_config("offset must satisfy 0 <= offset < quantum_modulus");
  if (config_.depth < 1) invalid_config("depth must be >= 1");

  auto normalize = [&](std::vector<int>& seq, const char* name) {
    if (seq.empty()) {
      seq.assign(static_cast<std::size_t>(config_.depth), 1);
      return;
    }
    if (seq.size() < static_cast<std::size_t>(config_.depth))
      invalid_config(std::string(name) + " sequence shorter than depth");
    seq.resize(static_cast<std::size_t>(config_.depth));
    for (int v : seq)
      if (v < 1) invalid_config(std::string(name) + " entries must be >= 1");
  };
  normalize(config_.multiplicity, "multiplicity");
  normalize(config_.complex_multiplicity, "complex_multiplicity");
}

void Tower::check_mu(int mu) const {
  if (mu < 1 || mu > config_.depth)
    contract_violation("class index mu=" + std::to_string(mu) + " outside [1, " +
                       std::to_string(config_.depth) + "]");
}

int Tower::multiplicity(int mu) const {
  check_mu(mu);
  return config_.multiplicity[static_cast<std::size_t>(mu - 1)];
}

int Tower::complex_multiplicity(int mu) const {
  check_mu(mu);
  return config_.complex_multiplicity[static_cast<std::size_t>(mu - 1)];
}

bool Tower::contains(ClassIndex index) const {
  return index.mu >= 1 && index.mu <= config_.depth && index.m >= 1 &&
         index.m <= config_.multiplicity[static_cast<std::size_t>(index.mu - 1)];
}

std::int64_t Tower::real_degree(ClassIndex index) const {
  if (!contains(index)) contract_violation("class index " + to_string(index) + " outside tower");
  return config_.offset + index.mu * config_.quantum_modulus;
}

std::int64_t Tower::complex_degree(int mu) const {
  return config_.offset + mu * config_.quantum_modulus * complex_multiplicity(mu);
}

std::vector<ClassIndex> Tower::place(int mu, Side) const {
  std::vector<ClassIndex> out;
  for (int m = 1; m <= multiplicity(mu); ++m) out.push_back({mu, m});
  return out;
}

std::vector<ClassIndex> Tower::indices() const {
  std::vector<ClassIndex> out;
  for (int mu = 1; mu <= config_.depth; ++mu)
    for (int m = 1; m <= multiplicity(mu); ++m) out.push_back({mu, m});
  return out;
}

std::size_t Tower::class_count() const {
  std::size_t n = 0;
  for (int v : config_.multiplicity) n += static_cast<std::size_t>(v);
  return n;
}

std::vector<Completion> Tower::real_completions(Side side) const {
  std::vector<Completion> out;
  for (ClassIndex i : indices())
    out.push_back({side, CompletionKind::Real, i.mu, i.m, real_degree(i)});
  return out;
}

std::vector<Completion> Tower::complex_completions(Side side) const {
  std::vector<Completion> out;
  for (int mu = 1; mu <= config_.depth; ++mu)
    out.push_back({side, CompletionKind::Complex, mu, std::nullopt, complex_degree(mu)});
  return out;
}

Tower Tower::truncated(int depth) const {
  if (depth < 1 || depth > config_.depth)
    invalid_config("truncation depth must lie in [1, " + std::to_string(config_.depth) + "]");
  TowerConfig c = config_;
  c.depth = depth;
  c.multiplicity.resize(static_cast<std::size_t>(depth));
  c.complex_multiplicity.resize(static_cast<std::size_t>(depth));
  return Tower(std::move(c));
}

Tower build_tower(const TowerConfig& config) { return Tower(config); }

}  // namespace bisheaf
