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

#include "pmlgame/engine.h"

#include <cmath>
#include <string>

#include "pmlgame/error.h"

namespace pmlgame {
namespace {

// Advances player i by one iteration. Run and Replay share this routine so
// that replaying a run's observations reproduces it bit for bit.
void AdvancePlayer(const AggregativeGame& game, const PlayerCost& fi, int i,
                   const UpdateRule& rule, const StepSchedule& steps, int k,
                   const Profile& ok, const Vec& x, const Vec& v, Vec* x_next,
                   Vec* v_next, Vec* grad) {
  const int n_players = game.n_players();
  PseudoGradientInto(n_players, fi, x, v, grad);
  const double lambda = steps.Step(k);
  *x_next = x - lambda * *grad;
  const bool project =
      rule.kind == UpdateRule::Kind::kConsensus || rule.projected;
  if (project) *x_next = Project(game.constraint(i), *x_next);

  if (rule.kind == UpdateRule::Kind::kFullAveraging) {
    v_next->setZero(x.size());
    for (int j = 0; j < n_players; ++j) {
      const double w = rule.weights(i, j);
      if (w != 0.0) *v_next += w * ok[j];
    }
    *v_next += *x_next - x;
  } else {
    Vec mix = Vec::Zero(x.size());
    for (int j = 0; j < n_players; ++j) {
      const double w = rule.weights(i, j);
      if (w != 0.0) mix += w * (ok[j] - ok[i]);
    }
    *v_next = v + steps.Mixing(k) * mix + (*x_next - x);
  }
  if (!x_next->allFinite() || !v_next->allFinite()) {
    Fail(ErrorCode::kNonFinite,
         "state overflow at iteration " + std::to_string(k) + ", player " +
             std::to_string(i) + "; the step size configuration diverges");
  }
}

void CheckX0(const AggregativeGame& game, const Profile& x0) {
  game.ValidateStrategies(x0);
  for (int i = 0; i < game.n_players(); ++i) {
    Check(game.constraint(i).Contains(x0[i], 1e-9), ErrorCode::kInvalidInput,
          "initial strategy of player " + std::to_string(i) +
              " lies outside its constraint set");
  }
}

}  // namespace

UpdateRule UpdateRule::FullAveraging(int n_players, bool projected) {
  Check(n_players >= 1, ErrorCode::kInvalidInput, "need at least one player");
  return FullAveraging(
      Mat::Constant(n_players, n_players, 1.0 / static_cast<double>(n_players)),
      projected);
}

UpdateRule UpdateRule::FullAveraging(Mat weights, bool projected) {
  UpdateRule rule;
  rule.kind = Kind::kFullAveraging;
  rule.weights = std::move(weights);
  rule.projected = projected;
  rule.Validate(static_cast<int>(rule.weights.rows()));
  return rule;
}

UpdateRule UpdateRule::Consensus(Mat weights) {
  UpdateRule rule;
  rule.kind = Kind::kConsensus;
  rule.weights = std::move(weights);
  rule.projected = true;
  rule.Validate(static_cast<int>(rule.weights.rows()));
  return rule;
}

UpdateRule UpdateRule::CompleteConsensus(int n_players) {
  Mat w =
      Mat::Constant(n_players, n_players, 1.0 / static_cast<double>(n_players));
  w.diagonal().setZero();
  return Consensus(std::move(w));
}

void UpdateRule::Validate(int n_players) const {
  Check(weights.rows() == n_players && weights.cols() == n_players,
        ErrorCode::kInvalidInput, "weight matrix must be N x N");
  Check(weights.allFinite() && (weights.array() >= 0.0).all(),
        ErrorCode::kInvalidInput, "weights must be finite and nonnegative");
  if (kind == Kind::kFullAveraging) {
    for (int i = 0; i < n_players; ++i) {
      Check(std::fabs(weights.row(i).sum() - 1.0) <= 1e-12,
            ErrorCode::kInvalidInput,
            "averaging weights must be row-stochastic");
    }
  } else {
    Check((weights - weights.transpose()).cwiseAbs().maxCoeff() <= 1e-15,
          ErrorCode::kInvalidInput, "consensus weights must be symmetric");
    Check(weights.diagonal().cwiseAbs().maxCoeff() == 0.0,
          ErrorCode::kInvalidInput, "consensus weights need a zero diagonal");
  }
}

Mat UpdateRule::InputCoefficients() const {
  if (kind == Kind::kFullAveraging) return weights;
  Mat c = weights;
  for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, i) = -weights.row(i).sum();
  return c;
}

Vec SampleNoise(const NoiseSchedule& noise, int k, int dim, Rng& rng) {
  Check(k >= 0, ErrorCode::kInvalidInput, "iteration index must be >= 0");
  Vec z(dim);
  if (noise.is_zero()) {
    z.setZero();
    return z;
  }
  const double scale = noise.Scale(k);
  for (int c = 0; c < dim; ++c) z[c] = rng.Laplace(scale);
  return z;
}

Profile InitialStrategies(const AggregativeGame& game, std::uint64_t seed) {
  Rng rng(seed);
  Profile x0;
  x0.reserve(game.n_players());
  const int n = game.dim();
  for (int i = 0; i < game.n_players(); ++i) {
    const ConstraintSet& cs = game.constraint(i);
    Vec xi(n);
    switch (cs.kind) {
      case ConstraintSet::Kind::kBox:
        for (int c = 0; c < n; ++c)
          xi[c] = rng.Uniform(cs.lower[c], cs.upper[c]);
        break;
      case ConstraintSet::Kind::kSimplex: {
        for (int c = 0; c < n; ++c) xi[c] = rng.Exponential();
        xi /= xi.sum();
        break;
      }
      case ConstraintSet::Kind::kUnbounded:
        for (int c = 0; c < n; ++c) xi[c] = rng.Uniform01();
        break;
    }
    x0.push_back(std::move(xi));
  }
  return x0;
}

Trajectory Run(const AggregativeGame& game, const CostProfile& f,
               const UpdateRule& rule, const NoiseSchedule& noise,
               const StepSchedule& steps, int horizon, const Profile& x0,
               std::uint64_t seed) {
  game.ValidateProfile(f);
  rule.Validate(game.n_players());
  noise.Validate();
  steps.Validate();
  Check(horizon >= 1, ErrorCode::kInvalidInput, "horizon T must be >= 1");
  CheckX0(game, x0);

  const int n_players = game.n_players();
  Trajectory t;
  t.horizon = horizon;
  t.seed = seed;
  t.noise = noise;
  t.steps = steps;
  t.rule = rule;
  t.x.reserve(horizon + 1);
  t.v.reserve(horizon + 1);
  t.o.reserve(horizon + 1);
  t.x.push_back(x0);
  t.v.push_back(x0);

  Rng rng(seed);
  Vec grad(game.dim());
  for (int k = 0; k <= horizon; ++k) {
    Profile ok(n_players);
    for (int i = 0; i < n_players; ++i) {
      ok[i] = t.v[k][i] + SampleNoise(noise, k, game.dim(), rng);
    }
    t.o.push_back(std::move(ok));
    if (k == horizon) break;
    Profile x_next(n_players), v_next(n_players);
    for (int i = 0; i < n_players; ++i) {
      AdvancePlayer(game, f[i], i, rule, steps, k, t.o[k], t.x[k][i], t.v[k][i],
                    &x_next[i], &v_next[i], &grad);
    }
    t.x.push_back(std::move(x_next));
    t.v.push_back(std::move(v_next));
  }
  return t;
}

void ValidateSequence(const AggregativeGame& game, const Sequence& s) {
  Check(!s.empty(), ErrorCode::kInvalidInput,
        "observation sequence needs at least one iteration");
  for (const Profile& p : s) game.ValidateStrategies(p);
}

PlayerReplay ReplayPlayer(const AggregativeGame& game, const PlayerCost& fi,
                          int i, const Sequence& o, const UpdateRule& rule,
                          const StepSchedule& steps, const Vec& x0i) {
  const int horizon = static_cast<int>(o.size()) - 1;
  PlayerReplay out;
  out.x.reserve(horizon + 1);
  out.v.reserve(horizon + 1);
  out.x.push_back(x0i);
  out.v.push_back(x0i);
  Vec grad(game.dim()), x_next(game.dim()), v_next(game.dim());
  for (int k = 0; k < horizon; ++k) {
    AdvancePlayer(game, fi, i, rule, steps, k, o[k], out.x[k], out.v[k],
                  &x_next, &v_next, &grad);
    out.x.push_back(x_next);
    out.v.push_back(v_next);
  }
  return out;
}

Replayed Replay(const AggregativeGame& game, const CostProfile& f,
                const Sequence& o, const UpdateRule& rule,
                const StepSchedule& steps, const Profile& x0) {
  game.ValidateProfile(f);
  rule.Validate(game.n_players());
  ValidateSequence(game, o);
  CheckX0(game, x0);
  const int n_players = game.n_players();
  const int horizon = static_cast<int>(o.size()) - 1;
  Replayed r;
  r.x.assign(horizon + 1, Profile(n_players));
  r.v.assign(horizon + 1, Profile(n_players));
  for (int i = 0; i < n_players; ++i) {
    PlayerReplay p = ReplayPlayer(game, f[i], i, o, rule, steps, x0[i]);
    for (int k = 0; k <= horizon; ++k) {
      r.x[k][i] = std::move(p.x[k]);
      r.v[k][i] = std::move(p.v[k]);
    }
  }
  return r;
}

double LaplaceLogDensity(const Vec& o, const Vec& v, double scale) {
  const double n = static_cast<double>(o.size());
  return -n * std::log(2.0 * scale) - (o - v).cwiseAbs().sum() / scale;
}

double LogDensity(const AggregativeGame& game, const CostProfile& f,
                  const Sequence& o, const UpdateRule& rule,
                  const NoiseSchedule& noise, const StepSchedule& steps,
                  const Profile& x0) {
  noise.Validate();
  Check(!noise.is_zero(), ErrorCode::kInvalidSchedule,
        "observation density is undefined without noise");
  const Replayed r = Replay(game, f, o, rule, steps, x0);
  double total = 0.0;
  for (std::size_t k = 0; k < o.size(); ++k) {
    const double scale = noise.Scale(static_cast<int>(k));
    for (int i = 0; i < game.n_players(); ++i) {
      total += LaplaceLogDensity(o[k][i], r.v[k][i], scale);
    }
  }
  Check(std::isfinite(total), ErrorCode::kNonFinite,
        "log-density is not finite");
  return total;
}

}  // namespace pmlgame
