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

#include "pmlgame/adversary.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "pmlgame/error.h"
#include "pmlgame/rng.h"

namespace pmlgame {
namespace {

Vec Mean(const Profile& p) {
  Vec m = Vec::Zero(p.front().size());
  for (const Vec& v : p) m += v;
  return m / static_cast<double>(p.size());
}

// Fhat_i with the aggregate replaced by the player's own broadcast.
Vec Predicted(const AdversaryState& s, int i, const Vec& oi, bool chain_rule) {
  const double n_players = static_cast<double>(s.a_hat.size());
  Vec f = s.a_hat[i] - s.b_hat[i].transpose() * oi;
  if (chain_rule) {
    f += s.b_hat[i] * (Vec::Ones(oi.size()) - s.x_hat[i]) / n_players;
  }
  return f;
}

void CheckShapes(const AdversaryState& s, const Profile& ok,
                 const Profile& ok1) {
  const std::size_t n = s.a_hat.size();
  Check(n >= 1 && ok.size() == n && ok1.size() == n && s.b_hat.size() == n &&
            s.x_hat.size() == n,
        ErrorCode::kInvalidInput, "adversary state and observations disagree");
  const Eigen::Index dim = s.a_hat.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    Check(ok[i].size() == dim && ok1[i].size() == dim &&
              s.a_hat[i].size() == dim && s.x_hat[i].size() == dim &&
              s.b_hat[i].rows() == dim && s.b_hat[i].cols() == dim,
          ErrorCode::kInvalidInput, "adversary dimensions disagree");
  }
}

// Upper bound on the largest Hessian eigenvalue of player i's loss term in
// (a_hat_i, b_hat_i): 2 lambda^2 (1 + (|u| / N + |o_i|)^2), u = 1 - x_hat_i.
double CurvatureBound(const AdversaryState& s, int i, const Vec& oi,
                      double lambda, bool chain_rule) {
  double reach = oi.norm();
  if (chain_rule) {
    reach += (Vec::Ones(oi.size()) - s.x_hat[i]).norm() /
             static_cast<double>(s.a_hat.size());
  }
  return 2.0 * lambda * lambda * (1.0 + reach * reach);
}

bool Finite(const AdversaryState& s) {
  for (std::size_t i = 0; i < s.a_hat.size(); ++i) {
    if (!s.a_hat[i].allFinite() || !s.b_hat[i].allFinite() ||
        !s.x_hat[i].allFinite()) {
      return false;
    }
  }
  return true;
}

}  // namespace

AdversaryState InitAdversary(const Profile& o0, std::uint64_t seed, double nu) {
  Check(!o0.empty(), ErrorCode::kInvalidInput, "need observations");
  const int n = static_cast<int>(o0.front().size());
  Rng rng(seed);
  AdversaryState s;
  s.nu = nu;
  for (const Vec& oi : o0) {
    Check(oi.size() == n, ErrorCode::kInvalidInput,
          "observation dimensions disagree");
    Vec a(n);
    for (int r = 0; r < n; ++r) a(r) = rng.StandardNormal();
    s.a_hat.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < o0.size(); ++i) {
    Mat b(n, n);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) b(r, c) = rng.StandardNormal();
    }
    s.b_hat.push_back(std::move(b));
  }
  s.x_hat = o0;
  return s;
}

double AttackLoss(const AdversaryState& s, const Profile& ok,
                  const Profile& ok1, const StepSchedule& steps, int k,
                  bool chain_rule) {
  CheckShapes(s, ok, ok1);
  const double lambda = steps.Step(k);
  const Vec mean = Mean(ok);
  double total = 0.0;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const Vec r =
        mean - lambda * Predicted(s, static_cast<int>(i), ok[i], chain_rule) -
        ok1[i];
    total += r.squaredNorm();
  }
  return total;
}

AttackGradient AttackLossGradient(const AdversaryState& s, const Profile& ok,
                                  const Profile& ok1, const StepSchedule& steps,
                                  int k, bool chain_rule) {
  CheckShapes(s, ok, ok1);
  const double lambda = steps.Step(k);
  const double n_players = static_cast<double>(ok.size());
  const Vec mean = Mean(ok);
  AttackGradient g;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const Vec r =
        mean - lambda * Predicted(s, static_cast<int>(i), ok[i], chain_rule) -
        ok1[i];
    g.a.push_back(-2.0 * lambda * r);
    Mat gb = ok[i] * r.transpose();
    if (chain_rule) {
      const Vec u = Vec::Ones(r.size()) - s.x_hat[i];
      gb -= r * u.transpose() / n_players;
    }
    g.b.push_back(2.0 * lambda * gb);
  }
  return g;
}

AdversaryState AttackStep(const AdversaryState& s, const Profile& ok,
                          const Profile& ok1, const StepSchedule& steps, int k,
                          const AttackOptions& options) {
  Check(options.inner_epochs >= 1, ErrorCode::kInvalidInput,
        "inner_epochs must be >= 1");
  AdversaryState next = s;
  next.nu = options.nu;
  double weight = 1.0;
  if (options.noise_weighting && !options.noise.is_zero()) {
    const double m = options.noise.Scale(k + 1);
    weight = 1.0 / (m * m);
  }
  for (int e = 0; e < options.inner_epochs; ++e) {
    const AttackGradient g =
        AttackLossGradient(next, ok, ok1, steps, k, options.chain_rule);
    for (std::size_t i = 0; i < ok.size(); ++i) {
      double nu = options.nu * weight;
      if (options.safeguard) {
        nu = std::min(nu,
                      1.0 / CurvatureBound(next, static_cast<int>(i), ok[i],
                                           steps.Step(k), options.chain_rule));
      }
      next.a_hat[i] -= nu * g.a[i];
      next.b_hat[i] -= nu * g.b[i];
    }
  }
  const double lambda = steps.Step(k);
  for (std::size_t i = 0; i < ok.size(); ++i) {
    next.x_hat[i] =
        next.x_hat[i] - lambda * Predicted(next, static_cast<int>(i), ok[i],
                                           options.chain_rule);
  }
  next.iteration = k + 1;
  if (!Finite(next)) {
    Fail(ErrorCode::kNonFinite,
         "attack diverged at iteration " + std::to_string(k) + "; reduce nu");
  }
  return next;
}

Vec FlattenTheta(const std::vector<Vec>& a, const std::vector<Mat>& b) {
  Check(a.size() == b.size() && !a.empty(), ErrorCode::kInvalidInput,
        "parameter lists disagree");
  const Eigen::Index n = a.front().size();
  Vec theta(static_cast<Eigen::Index>(a.size()) * (n + n * n));
  Eigen::Index pos = 0;
  for (const Vec& ai : a) {
    theta.segment(pos, n) = ai;
    pos += n;
  }
  for (const Mat& bi : b) {
    theta.segment(pos, n * n) = bi.reshaped();
    pos += n * n;
  }
  return theta;
}

Vec ThetaOf(const CostProfile& f) {
  std::vector<Vec> a;
  std::vector<Mat> b;
  for (const PlayerCost& c : f.entries) {
    Check(c.family() == CostFamily::kDisease, ErrorCode::kInvalidInput,
          "parameter vectors are defined for the disease family");
    a.push_back(c.disease().a);
    b.push_back(c.disease().b);
  }
  return FlattenTheta(a, b);
}

Vec ThetaOf(const AdversaryState& s) { return FlattenTheta(s.a_hat, s.b_hat); }

Vec PlayerTheta(const std::vector<Vec>& a, const std::vector<Mat>& b, int i) {
  Check(i >= 0 && i < static_cast<int>(a.size()) && a.size() == b.size(),
        ErrorCode::kInvalidInput, "player index out of range");
  const Eigen::Index n = a[i].size();
  Vec theta(n + n * n);
  theta.head(n) = a[i];
  theta.tail(n * n) = b[i].reshaped();
  return theta;
}

AttackResult RunAttack(const Sequence& o, const StepSchedule& steps,
                       int horizon, std::uint64_t seed,
                       const AttackOptions& options) {
  Check(horizon >= 0 && horizon < static_cast<int>(o.size()),
        ErrorCode::kInvalidInput, "observations must cover iterations 0..T");
  Check(options.nu >= 0.0 && options.max_retries >= 0 &&
            options.replay_passes >= 0,
        ErrorCode::kInvalidInput,
        "nu, replay_passes and max_retries must be nonnegative");
  AttackOptions opts = options;
  for (int attempt = 0;; ++attempt) {
    try {
      AttackResult out;
      out.effective_nu = opts.nu;
      out.retries = attempt;
      AdversaryState s = InitAdversary(o[0], seed, opts.nu);
      out.theta_hat.push_back(ThetaOf(s));
      out.player0_theta_hat.push_back(PlayerTheta(s.a_hat, s.b_hat, 0));
      for (int k = 0; k < horizon; ++k) {
        s = AttackStep(s, o[k], o[k + 1], steps, k, opts);
        for (int p = 0; p < opts.replay_passes; ++p) {
          s.x_hat = o[0];
          for (int j = 0; j <= k; ++j) {
            s = AttackStep(s, o[j], o[j + 1], steps, j, opts);
          }
        }
        out.theta_hat.push_back(ThetaOf(s));
        out.player0_theta_hat.push_back(PlayerTheta(s.a_hat, s.b_hat, 0));
      }
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonFinite || attempt >= opts.max_retries) {
        throw;
      }
      opts.nu *= 0.5;
    }
  }
}

double Gain(const Vec& theta, const Vec& theta_hat) {
  Check(theta.size() == theta_hat.size(), ErrorCode::kInvalidInput,
        "parameter vectors must have equal length");
  const double a = theta.norm();
  const double b = theta_hat.norm();
  Check(a > 0.0 && b > 0.0, ErrorCode::kZeroVector,
        "gain needs nonzero parameter vectors");
  const double cosine = theta.dot(theta_hat) / (a * b);
  return std::clamp(cosine, -1.0, 1.0) + 1.0;
}

LeakageSeries EmpiricalLeakage(const AggregativeGame& game,
                               const DiscretePrior& prior,
                               const UpdateRule& rule,
                               const NoiseSchedule& noise,
                               const StepSchedule& steps,
                               const LeakageConfig& config) {
  Check(config.n_samples >= 1 || !config.sample_seeds.empty(),
        ErrorCode::kInvalidInput, "n_samples must be >= 1");
  Check(config.horizon >= 1, ErrorCode::kInvalidInput, "horizon must be >= 1");
  Check(game.family() == CostFamily::kDisease, ErrorCode::kInvalidInput,
        "the attack targets the disease family");
  prior.ValidateFor(game);
  const int horizon = config.horizon;

  struct PerSample {
    std::vector<double> gain, gain0;
    double nu = 0.0;
  };
  std::vector<std::uint64_t> seeds = config.sample_seeds;
  if (seeds.empty()) {
    for (int j = 0; j < config.n_samples; ++j) {
      seeds.push_back(DeriveSeed(config.seed, static_cast<std::uint64_t>(j)));
    }
  }
  if (config.x0) game.ValidateStrategies(*config.x0);
  const int n_samples = static_cast<int>(seeds.size());
  std::vector<PerSample> results(n_samples);

  auto work = [&](int j) {
    Rng draw(DeriveSeed(seeds[j], 0));
    const CostProfile f = prior.profile(prior.Sample(draw));
    const Profile x0 = config.x0
                           ? *config.x0
                           : InitialStrategies(game, DeriveSeed(seeds[j], 1));
    const Trajectory t =
        Run(game, f, rule, noise, steps, horizon, x0, DeriveSeed(seeds[j], 2));
    AttackOptions attack = config.attack;
    attack.noise = noise;
    const AttackResult a =
        RunAttack(t.o, steps, horizon, DeriveSeed(seeds[j], 3), attack);
    const Vec theta = ThetaOf(f);
    std::vector<Vec> fa;
    std::vector<Mat> fb;
    for (const PlayerCost& c : f.entries) {
      fa.push_back(c.disease().a);
      fb.push_back(c.disease().b);
    }
    const Vec theta0 = PlayerTheta(fa, fb, 0);
    PerSample& r = results[j];
    r.nu = a.effective_nu;
    r.gain.assign(horizon + 1, 1.0);
    r.gain0.assign(horizon + 1, 1.0);
    for (int k = 1; k <= horizon; ++k) {
      r.gain[k] = Gain(theta, a.theta_hat[k]);
      r.gain0[k] = Gain(theta0, a.player0_theta_hat[k]);
    }
  };

  const int threads = std::max(1, std::min(config.threads, n_samples));
  if (threads == 1) {
    for (int j = 0; j < n_samples; ++j) work(j);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int j = next++; j < n_samples; j = next++) work(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Reduce in seed order so the result does not depend on scheduling.
  LeakageSeries out;
  out.seeds = seeds;
  out.mean_gain.assign(horizon + 1, 0.0);
  out.mean_gain_player0.assign(horizon + 1, 0.0);
  out.min_effective_nu = results.front().nu;
  for (const PerSample& r : results) {
    for (int k = 0; k <= horizon; ++k) {
      out.mean_gain[k] += r.gain[k];
      out.mean_gain_player0[k] += r.gain0[k];
    }
    out.min_effective_nu = std::min(out.min_effective_nu, r.nu);
  }
  for (int k = 0; k <= horizon; ++k) {
    out.mean_gain[k] /= n_samples;
    out.mean_gain_player0[k] /= n_samples;
    out.log_mean_gain.push_back(std::log(out.mean_gain[k]));
    out.log_mean_gain_player0.push_back(std::log(out.mean_gain_player0[k]));
  }
  return out;
}

}  // namespace pmlgame
