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

#include "pmlgame/game.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pmlgame/error.h"

namespace pmlgame {
namespace {

bool AllFinite(const Vec& v) { return v.allFinite(); }

Vec ProjectSimplex(const Vec& y) {
  const Eigen::Index n = y.size();
  // Points already on the simplex are returned as-is.
  if ((y.array() >= 0.0).all() && std::fabs(y.sum() - 1.0) <= 1e-12) return y;
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  return (y.array() - theta).max(0.0).matrix();
}

}  // namespace

ConstraintSet ConstraintSet::Box(Vec lower, Vec upper) {
  Check(lower.size() == upper.size(), ErrorCode::kInvalidInput,
        "box bounds must have equal length");
  Check((lower.array() <= upper.array()).all(), ErrorCode::kInvalidInput,
        "box requires lower <= upper componentwise");
  return {Kind::kBox, std::move(lower), std::move(upper)};
}

bool ConstraintSet::Contains(const Vec& x, double tol) const {
  switch (kind) {
    case Kind::kUnbounded:
      return AllFinite(x);
    case Kind::kBox:
      return x.size() == lower.size() &&
             (x.array() >= lower.array() - tol).all() &&
             (x.array() <= upper.array() + tol).all();
    case Kind::kSimplex:
      return (x.array() >= -tol).all() && std::fabs(x.sum() - 1.0) <= tol;
  }
  return false;
}

std::string ConstraintKindName(ConstraintSet::Kind kind) {
  switch (kind) {
    case ConstraintSet::Kind::kBox:
      return "box";
    case ConstraintSet::Kind::kSimplex:
      return "simplex";
    case ConstraintSet::Kind::kUnbounded:
      return "unbounded";
  }
  return "unbounded";
}

Vec Project(const ConstraintSet& cs, const Vec& y) {
  switch (cs.kind) {
    case ConstraintSet::Kind::kUnbounded:
      return y;
    case ConstraintSet::Kind::kBox:
      return y.cwiseMax(cs.lower).cwiseMin(cs.upper);
    case ConstraintSet::Kind::kSimplex:
      return ProjectSimplex(y);
  }
  return y;
}

std::string CostFamilyName(CostFamily family) {
  return family == CostFamily::kDisease ? "disease" : "quadratic_test";
}

CostFamily CostFamilyFromName(const std::string& name) {
  if (name == "disease") return CostFamily::kDisease;
  if (name == "quadratic_test") return CostFamily::kQuadraticTest;
  Fail(ErrorCode::kInvalidInput, "unknown cost family '" + name + "'");
}

PlayerCost PlayerCost::Disease(Vec a, Mat b, int id) {
  Check(b.rows() == a.size() && b.cols() == a.size(), ErrorCode::kInvalidInput,
        "disease cost needs a of length n and b of shape n x n");
  Check(a.allFinite() && b.allFinite(), ErrorCode::kInvalidInput,
        "disease cost entries must be finite");
  PlayerCost out;
  out.params_ = DiseaseCost{std::move(a), std::move(b)};
  out.id_ = id;
  return out;
}

PlayerCost PlayerCost::Quadratic(Mat q, Vec r, double s, int id) {
  Check(q.rows() == r.size() && q.cols() == r.size(), ErrorCode::kInvalidInput,
        "quadratic cost needs q of shape n x n and r of length n");
  Check(q.allFinite() && r.allFinite() && std::isfinite(s),
        ErrorCode::kInvalidInput, "quadratic cost entries must be finite");
  Check((q - q.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + q.norm()),
        ErrorCode::kInvalidInput, "quadratic cost q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> eig(q, Eigen::EigenvaluesOnly);
  Check(eig.eigenvalues().minCoeff() > 0.0, ErrorCode::kInvalidInput,
        "quadratic cost q must be positive definite");
  PlayerCost out;
  out.params_ = QuadraticCost{std::move(q), std::move(r), s};
  out.id_ = id;
  return out;
}

CostFamily PlayerCost::family() const {
  return std::holds_alternative<DiseaseCost>(params_)
             ? CostFamily::kDisease
             : CostFamily::kQuadraticTest;
}

int PlayerCost::dim() const {
  if (const auto* d = std::get_if<DiseaseCost>(&params_)) {
    return static_cast<int>(d->a.size());
  }
  return static_cast<int>(std::get<QuadraticCost>(params_).r.size());
}

const DiseaseCost& PlayerCost::disease() const {
  const auto* d = std::get_if<DiseaseCost>(&params_);
  Check(d != nullptr, ErrorCode::kInvalidInput, "not a disease cost");
  return *d;
}

const QuadraticCost& PlayerCost::quadratic() const {
  const auto* q = std::get_if<QuadraticCost>(&params_);
  Check(q != nullptr, ErrorCode::kInvalidInput, "not a quadratic cost");
  return *q;
}

bool PlayerCost::SameParameters(const PlayerCost& other) const {
  if (family() != other.family() || dim() != other.dim()) return false;
  if (family() == CostFamily::kDisease) {
    return disease().a == other.disease().a && disease().b == other.disease().b;
  }
  const QuadraticCost& l = quadratic();
  const QuadraticCost& r = other.quadratic();
  return l.q == r.q && l.r == r.r && l.s == r.s;
}

bool SameEntry(const PlayerCost& lhs, const PlayerCost& rhs) {
  if (lhs.id() >= 0 && rhs.id() >= 0) return lhs.id() == rhs.id();
  return lhs.SameParameters(rhs);
}

AggregativeGame::AggregativeGame(int n_players, int dim, CostFamily family,
                                 std::vector<ConstraintSet> constraints)
    : n_players_(n_players),
      dim_(dim),
      family_(family),
      constraints_(std::move(constraints)) {
  Check(n_players >= 2, ErrorCode::kInvalidInput, "need at least 2 players");
  Check(dim >= 1, ErrorCode::kInvalidInput, "strategy dimension must be >= 1");
  Check(static_cast<int>(constraints_.size()) == n_players,
        ErrorCode::kInvalidInput, "one constraint set per player required");
  for (const ConstraintSet& cs : constraints_) {
    if (cs.kind == ConstraintSet::Kind::kBox) {
      Check(cs.lower.size() == dim, ErrorCode::kInvalidInput,
            "box bounds must match the strategy dimension");
    }
  }
}

AggregativeGame AggregativeGame::Uniform(int n_players, int dim,
                                         CostFamily family,
                                         const ConstraintSet& cs) {
  return AggregativeGame(
      n_players, dim, family,
      std::vector<ConstraintSet>(
          static_cast<std::size_t>(std::max(n_players, 0)), cs));
}

AggregativeGame AggregativeGame::WithDefaults(int n_players, int dim,
                                              CostFamily family) {
  return Uniform(n_players, dim, family,
                 family == CostFamily::kDisease ? ConstraintSet::Simplex()
                                                : ConstraintSet::Unbounded());
}

void AggregativeGame::ValidateCost(const PlayerCost& fi) const {
  Check(fi.family() == family_, ErrorCode::kInvalidInput,
        "cost family does not match the game");
  Check(fi.dim() == dim_, ErrorCode::kInvalidInput,
        "cost dimension does not match the game");
}

void AggregativeGame::ValidateProfile(const CostProfile& f) const {
  Check(f.n_players() == n_players_, ErrorCode::kInvalidInput,
        "cost profile must have one entry per player");
  for (const PlayerCost& fi : f.entries) ValidateCost(fi);
}

void AggregativeGame::ValidateStrategies(const Profile& x) const {
  Check(static_cast<int>(x.size()) == n_players_, ErrorCode::kInvalidInput,
        "strategy profile must have one vector per player");
  for (const Vec& xi : x) {
    Check(xi.size() == dim_, ErrorCode::kInvalidInput,
          "strategy vector length must equal the game dimension");
  }
}

Vec Aggregate(const Profile& x) {
  Check(!x.empty(), ErrorCode::kInvalidInput, "aggregate of an empty profile");
  const Eigen::Index n = x.front().size();
  Vec sum = Vec::Zero(n);
  for (const Vec& xi : x) {
    Check(xi.size() == n, ErrorCode::kInvalidInput,
          "aggregate needs equal-length vectors");
    sum += xi;
  }
  return sum / static_cast<double>(x.size());
}

double Cost(const AggregativeGame& game, const PlayerCost& fi, int i,
            const Profile& x) {
  game.ValidateCost(fi);
  game.ValidateStrategies(x);
  Check(i >= 0 && i < game.n_players(), ErrorCode::kInvalidInput,
        "player index out of range");
  const Vec delta = Aggregate(x);
  const Vec& xi = x[i];
  if (fi.family() == CostFamily::kDisease) {
    const DiseaseCost& c = fi.disease();
    const Vec ones = Vec::Ones(xi.size());
    return c.a.dot(xi) + delta.dot(c.b * (ones - xi));
  }
  const QuadraticCost& c = fi.quadratic();
  return 0.5 * xi.dot(c.q * xi) + c.r.dot(xi) + c.s * delta.dot(xi);
}

void PseudoGradientInto(int n_players, const PlayerCost& fi, const Vec& xi,
                        const Vec& delta, Vec* out) {
  const double inv_n = 1.0 / static_cast<double>(n_players);
  if (fi.family() == CostFamily::kDisease) {
    const DiseaseCost& c = fi.disease();
    // a + (1/N) b (1 - x_i) - b' delta
    out->noalias() = c.a;
    out->noalias() += inv_n * (c.b.rowwise().sum() - c.b * xi);
    out->noalias() -= c.b.transpose() * delta;
    return;
  }
  const QuadraticCost& c = fi.quadratic();
  // q x_i + r + s delta + (s/N) x_i
  out->noalias() = c.q * xi;
  *out += c.r + c.s * delta + (c.s * inv_n) * xi;
}

Vec PseudoGradient(const AggregativeGame& game, const PlayerCost& fi,
                   const Vec& xi, const Vec& delta) {
  game.ValidateCost(fi);
  Check(xi.size() == game.dim() && delta.size() == game.dim(),
        ErrorCode::kInvalidInput, "gradient inputs must have length dim");
  Vec out(game.dim());
  PseudoGradientInto(game.n_players(), fi, xi, delta, &out);
  return out;
}

double NeResidual(const AggregativeGame& game, const CostProfile& f,
                  const Profile& x) {
  game.ValidateProfile(f);
  game.ValidateStrategies(x);
  const Vec delta = Aggregate(x);
  double worst = 0.0;
  Vec grad(game.dim());
  for (int i = 0; i < game.n_players(); ++i) {
    PseudoGradientInto(game.n_players(), f[i], x[i], delta, &grad);
    const Vec step = Project(game.constraint(i), x[i] - grad);
    worst = std::max(worst, (x[i] - step).norm());
  }
  return worst;
}

}  // namespace pmlgame
