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

#ifndef PMLGAME_GAME_H_
#define PMLGAME_GAME_H_

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

namespace pmlgame {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// One vector per player: a strategy profile, an estimate profile or one
// iteration's observations.
using Profile = std::vector<Vec>;

struct ConstraintSet {
  enum class Kind { kBox, kSimplex, kUnbounded };

  static ConstraintSet Box(Vec lower, Vec upper);
  static ConstraintSet Simplex() { return {Kind::kSimplex, {}, {}}; }
  static ConstraintSet Unbounded() { return {Kind::kUnbounded, {}, {}}; }

  bool Contains(const Vec& x, double tol = 1e-12) const;

  Kind kind = Kind::kUnbounded;
  Vec lower;
  Vec upper;
};

std::string ConstraintKindName(ConstraintSet::Kind kind);

// Euclidean projection. Points already inside the set are returned
// unchanged, which makes the projection exactly idempotent.
Vec Project(const ConstraintSet& cs, const Vec& y);

enum class CostFamily { kDisease, kQuadraticTest };

std::string CostFamilyName(CostFamily family);
CostFamily CostFamilyFromName(const std::string& name);

// f_i(x) = a'x_i + delta(x)' b (1 - x_i).
struct DiseaseCost {
  Vec a;
  Mat b;
};

// f_i(x) = 0.5 x_i' q x_i + r'x_i + s delta(x)'x_i, with q positive definite.
struct QuadraticCost {
  Mat q;
  Vec r;
  double s = 0.0;
};

class PlayerCost {
 public:
  static PlayerCost Disease(Vec a, Mat b, int id = -1);
  static PlayerCost Quadratic(Mat q, Vec r, double s, int id = -1);

  CostFamily family() const;
  int dim() const;

  // Stable identifier used as a key in prior supports; -1 means unset.
  int id() const { return id_; }
  void set_id(int id) { id_ = id; }

  const DiseaseCost& disease() const;
  const QuadraticCost& quadratic() const;

  bool SameParameters(const PlayerCost& other) const;

 private:
  std::variant<DiseaseCost, QuadraticCost> params_;
  int id_ = -1;
};

// Entries are the same if both carry ids and the ids match; otherwise the
// parameters are compared.
bool SameEntry(const PlayerCost& lhs, const PlayerCost& rhs);

struct CostProfile {
  std::vector<PlayerCost> entries;
  std::string id;

  int n_players() const { return static_cast<int>(entries.size()); }
  const PlayerCost& operator[](int i) const { return entries[i]; }
};

class AggregativeGame {
 public:
  AggregativeGame(int n_players, int dim, CostFamily family,
                  std::vector<ConstraintSet> constraints);

  // Same constraint set for every player.
  static AggregativeGame Uniform(int n_players, int dim, CostFamily family,
                                 const ConstraintSet& cs);
  // Family defaults: Simplex for Disease, Unbounded for QuadraticTest.
  static AggregativeGame WithDefaults(int n_players, int dim,
                                      CostFamily family);

  int n_players() const { return n_players_; }
  int dim() const { return dim_; }
  CostFamily family() const { return family_; }
  const ConstraintSet& constraint(int i) const { return constraints_[i]; }
  const std::vector<ConstraintSet>& constraints() const { return constraints_; }

  void ValidateCost(const PlayerCost& fi) const;
  void ValidateProfile(const CostProfile& f) const;
  void ValidateStrategies(const Profile& x) const;

 private:
  int n_players_;
  int dim_;
  CostFamily family_;
  std::vector<ConstraintSet> constraints_;
};

// delta(x) = (1/N) sum_i x_i.
Vec Aggregate(const Profile& x);

// Cost of player i at profile x.
double Cost(const AggregativeGame& game, const PlayerCost& fi, int i,
            const Profile& x);

// Gradient of player i's cost in its own strategy with the aggregate
// supplied separately. Includes the 1/N term that flows through delta.
Vec PseudoGradient(const AggregativeGame& game, const PlayerCost& fi,
                   const Vec& xi, const Vec& delta);

// Allocation-free variant used in inner loops.
void PseudoGradientInto(int n_players, const PlayerCost& fi, const Vec& xi,
                        const Vec& delta, Vec* out);

// max_i || x_i - P_i(x_i - F_i(x_i, delta(x))) ||_2.
double NeResidual(const AggregativeGame& game, const CostProfile& f,
                  const Profile& x);

}  // namespace pmlgame

#endif  // PMLGAME_GAME_H_
