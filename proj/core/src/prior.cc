//
// Copyright 2026 The pmlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "pmlgame/prior.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmlgame/error.h"

namespace pmlgame {

DiscretePrior::DiscretePrior(int n_players, std::vector<PlayerCost> pool,
                             std::vector<std::uint16_t> rows,
                             std::vector<double> probs)
    : n_players_(n_players),
      pool_(std::move(pool)),
      rows_(std::move(rows)),
      probs_(std::move(probs)) {
  Check(!probs_.empty(), ErrorCode::kEmptyPrior, "prior has empty support");
  Check(n_players_ >= 1, ErrorCode::kInvalidInput, "need at least one player");
  Check(rows_.size() == probs_.size() * static_cast<std::size_t>(n_players_),
        ErrorCode::kInvalidInput, "support rows do not match player count");
  Check(static_cast<int>(pool_.size()) <= kMaxPoolSize,
        ErrorCode::kInvalidInput, "too many distinct player costs");
  for (std::uint16_t r : rows_) {
    Check(r < pool_.size(), ErrorCode::kInvalidInput,
          "support row references a missing entry");
  }
  for (std::size_t e = 0; e < pool_.size(); ++e) {
    pool_[e].set_id(static_cast<int>(e));
    Check(pool_[e].family() == pool_.front().family() &&
              pool_[e].dim() == pool_.front().dim(),
          ErrorCode::kInvalidInput, "all entries must share family and dim");
  }
  // Compensated sum so the normalization check is not fooled by 2^20 terms.
  long double total = 0.0L;
  for (double p : probs_) {
    Check(p > 0.0 && std::isfinite(p), ErrorCode::kInvalidInput,
          "prior masses must be positive");
    total += p;
  }
  Check(std::fabs(static_cast<double>(total) - 1.0) <= 1e-12,
        ErrorCode::kInvalidInput, "prior masses must sum to 1");
  log_probs_.resize(probs_.size());
  for (std::size_t s = 0; s < probs_.size(); ++s) {
    log_probs_[s] = std::log(probs_[s]);
  }
}

DiscretePrior DiscretePrior::FromProfiles(
    const std::vector<CostProfile>& profiles,
    const std::vector<double>& probs) {
  Check(!profiles.empty(), ErrorCode::kEmptyPrior, "prior has empty support");
  Check(profiles.size() == probs.size(), ErrorCode::kInvalidInput,
        "one probability per profile required");
  const int n_players = profiles.front().n_players();
  std::vector<PlayerCost> pool;
  std::vector<std::uint16_t> rows;
  rows.reserve(profiles.size() * n_players);
  for (const CostProfile& f : profiles) {
    Check(f.n_players() == n_players, ErrorCode::kInvalidInput,
          "profiles must share the player count");
    for (const PlayerCost& c : f.entries) {
      std::size_t idx = 0;
      while (idx < pool.size() && !SameEntry(pool[idx], c)) ++idx;
      if (idx == pool.size()) pool.push_back(c);
      rows.push_back(static_cast<std::uint16_t>(idx));
    }
  }
  return DiscretePrior(n_players, std::move(pool), std::move(rows), probs);
}

DiscretePrior DiscretePrior::PointMass(const CostProfile& f) {
  return FromProfiles({f}, {1.0});
}

DiscretePrior DiscretePrior::IndependentProduct(
    const std::vector<std::vector<std::pair<PlayerCost, double>>>& marginals) {
  const int n_players = static_cast<int>(marginals.size());
  Check(n_players >= 1, ErrorCode::kInvalidInput, "need at least one player");
  double support = 1.0;
  std::vector<PlayerCost> pool;
  std::vector<std::vector<int>> ids(n_players);
  for (int i = 0; i < n_players; ++i) {
    Check(!marginals[i].empty(), ErrorCode::kEmptyPrior,
          "empty marginal for a player");
    support *= static_cast<double>(marginals[i].size());
    for (const auto& [cost, mass] : marginals[i]) {
      std::size_t idx = 0;
      while (idx < pool.size() && !SameEntry(pool[idx], cost)) ++idx;
      if (idx == pool.size()) pool.push_back(cost);
      ids[i].push_back(static_cast<int>(idx));
    }
  }
  Check(support <= static_cast<double>(1u << kMaxCorrelatedPlayers),
        ErrorCode::kSupportTooLarge, "product support exceeds 2^20 profiles");
  const std::size_t size = static_cast<std::size_t>(support);
  std::vector<std::uint16_t> rows(size * n_players);
  std::vector<double> probs(size);
  for (std::size_t s = 0; s < size; ++s) {
    std::size_t rem = s;
    double p = 1.0;
    // Last player varies fastest.
    for (int i = n_players - 1; i >= 0; --i) {
      const std::size_t m = marginals[i].size();
      const std::size_t pick = rem % m;
      rem /= m;
      rows[s * n_players + i] = static_cast<std::uint16_t>(ids[i][pick]);
      p *= marginals[i][pick].second;
    }
    probs[s] = p;
  }
  return DiscretePrior(n_players, std::move(pool), std::move(rows),
                       std::move(probs));
}

CostProfile DiscretePrior::profile(std::size_t s) const {
  CostProfile f;
  f.entries.reserve(n_players_);
  for (int i = 0; i < n_players_; ++i)
    f.entries.push_back(pool_[entry_index(s, i)]);
  f.id = profile_id(s);
  return f;
}

std::string DiscretePrior::profile_id(std::size_t s) const {
  std::string id;
  for (int i = 0; i < n_players_; ++i) {
    if (i) id.push_back('.');
    id += std::to_string(entry_index(s, i));
  }
  return id;
}

std::uint64_t DiscretePrior::RowKey(const int* entries) const {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (int i = 0; i < n_players_; ++i) {
    h = MixSeed(h ^ static_cast<std::uint64_t>(entries[i]));
  }
  return h;
}

std::optional<std::size_t> DiscretePrior::Find(
    const std::vector<int>& entries) const {
  if (static_cast<int>(entries.size()) != n_players_) return std::nullopt;
  if (index_.empty()) {
    std::vector<int> row(n_players_);
    for (std::size_t s = 0; s < size(); ++s) {
      for (int i = 0; i < n_players_; ++i) row[i] = entry_index(s, i);
      index_.emplace(RowKey(row.data()), s);
    }
  }
  auto [lo, hi] = index_.equal_range(RowKey(entries.data()));
  std::optional<std::size_t> best;
  for (auto it = lo; it != hi; ++it) {
    bool same = true;
    for (int i = 0; i < n_players_ && same; ++i) {
      same = entry_index(it->second, i) == entries[i];
    }
    if (same && (!best || it->second < *best)) best = it->second;
  }
  return best;
}

std::vector<int> DiscretePrior::EntriesAt(int i) const {
  std::vector<int> out;
  std::vector<char> seen(pool_.size(), 0);
  for (std::size_t s = 0; s < size(); ++s) {
    const int e = entry_index(s, i);
    if (!seen[e]) {
      seen[e] = 1;
      out.push_back(e);
    }
  }
  return out;
}

std::vector<std::pair<int, double>> DiscretePrior::Marginal(int i) const {
  Check(i >= 0 && i < n_players_, ErrorCode::kInvalidInput,
        "player index out of range");
  std::vector<int> order = EntriesAt(i);
  std::vector<long double> mass(pool_.size(), 0.0L);
  for (std::size_t s = 0; s < size(); ++s) mass[entry_index(s, i)] += probs_[s];
  std::vector<std::pair<int, double>> out;
  for (int e : order) out.emplace_back(e, static_cast<double>(mass[e]));
  return out;
}

std::size_t DiscretePrior::Sample(Rng& rng) const {
  return rng.Categorical(probs_);
}

void DiscretePrior::ValidateFor(const AggregativeGame& game) const {
  Check(n_players_ == game.n_players(), ErrorCode::kInvalidInput,
        "prior player count does not match the game");
  for (const PlayerCost& c : pool_) game.ValidateCost(c);
}

DiscretePrior CorrelatedPrior(const CorrelatedBinarySpec& spec) {
  const int n = spec.n_players;
  Check(n >= 2, ErrorCode::kInvalidInput, "correlated prior needs N >= 2");
  Check(n <= kMaxCorrelatedPlayers, ErrorCode::kSupportTooLarge,
        "correlated prior supports at most 20 players");
  Check(spec.alpha > 0.0 && spec.alpha < 0.5, ErrorCode::kInvalidInput,
        "alpha must lie in (0, 0.5)");
  Check(spec.beta > 0.0 && spec.beta < 1.0, ErrorCode::kInvalidInput,
        "beta must lie in (0, 1)");
  Check(spec.f0.family() == spec.f1.family() && spec.f0.dim() == spec.f1.dim(),
        ErrorCode::kInvalidInput, "f0 and f1 must share family and dim");

  const std::size_t size = std::size_t{1} << n;
  const std::size_t others = (std::size_t{1} << (n - 1)) - 1;
  const double spread = (1.0 - spec.beta) / static_cast<double>(others);
  std::vector<std::uint16_t> rows(size * n);
  std::vector<double> probs(size);
  const std::size_t rest_mask = (std::size_t{1} << (n - 1)) - 1;
  for (std::size_t s = 0; s < size; ++s) {
    // Bit (n-1-i) of s is player i's status; 1 selects f1.
    for (int i = 0; i < n; ++i) {
      rows[s * n + i] = static_cast<std::uint16_t>((s >> (n - 1 - i)) & 1u);
    }
    const bool first_is_f1 = (s >> (n - 1)) & 1u;
    const std::size_t rest = s & rest_mask;
    const bool rest_matches = first_is_f1 ? rest == rest_mask : rest == 0;
    const double marginal = first_is_f1 ? 1.0 - spec.alpha : spec.alpha;
    probs[s] = marginal * (rest_matches ? spec.beta : spread);
  }
  std::vector<PlayerCost> pool{spec.f0, spec.f1};
  return DiscretePrior(n, std::move(pool), std::move(rows), std::move(probs));
}

double EpsilonMax(const DiscretePrior& prior, int i) {
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& [entry, mass] : prior.Marginal(i)) {
    if (mass > 0.0) smallest = std::min(smallest, mass);
  }
  return -std::log(smallest);
}

int Hamming(const CostProfile& f, const CostProfile& g) {
  Check(f.n_players() == g.n_players(), ErrorCode::kInvalidInput,
        "profiles must have equal length");
  int d = 0;
  for (int i = 0; i < f.n_players(); ++i) d += SameEntry(f[i], g[i]) ? 0 : 1;
  return d;
}

}  // namespace pmlgame
