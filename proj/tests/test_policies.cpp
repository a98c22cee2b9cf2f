// Copyright 2026 The BanditBench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bandit/policies.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

#include "bandit/errors.hpp"
#include "oracles.hpp"

using namespace bandit;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

RoundContext basis_context(int k) {
  RoundContext ctx;
  ctx.t = 1;
  ctx.actions = MatrixXd::Identity(k, k);
  return ctx;
}

RoundContext context_from_rows(std::initializer_list<std::vector<double>> rows) {
  RoundContext ctx;
  ctx.t = 1;
  const auto first = rows.begin();
  ctx.actions.resize(static_cast<Eigen::Index>(rows.size()),
                     static_cast<Eigen::Index>(first->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      ctx.actions(r, static_cast<Eigen::Index>(c)) = row[c];
    ++r;
  }
  return ctx;
}

// Drive a k-armed policy into a given (pulls, means) state.
void force_karmed_state(CodeKArmedPolicy& policy, const RoundContext& ctx,
                        const std::vector<long>& pulls,
                        const VectorXd& means) {
  for (std::size_t a = 0; a < pulls.size(); ++a)
    for (long i = 0; i < pulls[a]; ++i)
      policy.observe(ctx, static_cast<int>(a), means(static_cast<int>(a)));
}

PolicyConfig base_config(const std::string& tag) {
  PolicyConfig cfg;
  cfg.algorithm = tag;
  cfg.delta = 0.05;
  cfg.lambda = 1.0;
  cfg.L = 1.0;
  cfg.S = 0.0;
  cfg.R = 1.0;
  cfg.horizon = 10000;
  return cfg;
}

VectorXd random_vector(Eigen::Index d, Rng& rng) {
  VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("plausible set: separated two-armed state keeps only the leader") {
  const auto ctx = basis_context(2);
  CodeKArmedPolicy policy(2, base_config("code"));
  VectorXd means(2);
  means << 0.9, 0.1;
  force_karmed_state(policy, ctx, {50, 50}, means);

  Rng rng(1);
  const Decision dec = policy.decide(ctx, rng);
  // c_t = sqrt(2 ln 20 / 50) = 0.3462: arm 1 UCB 0.446 < arm 0 LCB 0.554.
  const double c = std::sqrt(2.0 * std::log(20.0) / 50.0);
  CHECK(dec.view.ucb(1) == doctest::Approx(0.1 + c));
  CHECK(dec.view.lcb(0) == doctest::Approx(0.9 - c));
  const auto plausible = plausible_set(dec.view.ucb, dec.view.lcb);
  REQUIRE(plausible.size() == 1);
  CHECK(plausible[0] == 0);
  CHECK(dec.arm == 0);
}

TEST_CASE("plausible set: unpulled arms have infinite width and all qualify") {
  const auto ctx = basis_context(4);
  CodeKArmedPolicy policy(4, base_config("code"));
  Rng rng(2);
  const Decision dec = policy.decide(ctx, rng);
  CHECK(plausible_set(dec.view.ucb, dec.view.lcb).size() == 4);
  CHECK(dec.arm == 0);  // initialization sweep, lowest index first
}

TEST_CASE("plausible set: single action") {
  VectorXd one_u(1), one_l(1);
  one_u << 0.3;
  one_l << -0.1;
  const auto plausible = plausible_set(one_u, one_l);
  REQUIRE(plausible.size() == 1);
  CHECK(plausible[0] == 0);
}

TEST_CASE("k-armed selection picks the least-pulled plausible arm") {
  const auto ctx = basis_context(3);
  Rng rng(3);
  {
    CodeKArmedPolicy policy(3, base_config("code"));
    force_karmed_state(policy, ctx, {3, 1, 2}, VectorXd::Constant(3, 0.5));
    CHECK(policy.decide(ctx, rng).arm == 1);
  }
  {
    CodeKArmedPolicy policy(2, base_config("code"));
    force_karmed_state(policy, basis_context(2), {5, 5},
                       VectorXd::Constant(2, 0.5));
    CHECK(policy.decide(basis_context(2), rng).arm == 0);  // tie -> lowest
  }
}

TEST_CASE("k-armed selection matches the dense brute force") {
  Rng rng(88);
  const PolicyConfig cfg = base_config("code");
  for (int instance = 0; instance < 300; ++instance) {
    const int k = 2 + rng.uniform_int(5);
    std::vector<long> pulls(k);
    VectorXd means(k);
    for (int a = 0; a < k; ++a) {
      pulls[a] = 1 + rng.uniform_int(20);
      means(a) = rng.uniform(0.0, 1.0);
    }
    const auto ctx = basis_context(k);
    CodeKArmedPolicy policy(k, cfg);
    force_karmed_state(policy, ctx, pulls, means);
    const int expect = oracles::code_karmed_bruteforce(pulls, means, cfg.delta);
    CHECK(policy.decide(ctx, rng).arm == expect);
  }
}

TEST_CASE("linear selection prefers the larger-uncertainty plausible action") {
  CodeLinearPolicy policy(2, base_config("code"));
  const auto ctx = context_from_rows({{1.0, 0.0}, {0.5, 0.0}});
  Rng rng(4);
  CHECK(policy.decide(ctx, rng).arm == 0);

  // All actions identical: tie-break to index 0.
  CodeLinearPolicy tie(2, base_config("code"));
  const auto same = context_from_rows({{0.4, 0.4}, {0.4, 0.4}, {0.4, 0.4}});
  CHECK(tie.decide(same, rng).arm == 0);
}

TEST_CASE("linear selection matches the dense enumeration oracle") {
  Rng rng(505);
  int instance = 0;
  while (instance < 200) {
    const int d = 2 + rng.uniform_int(5);
    const int k = 2 + rng.uniform_int(9);
    PolicyConfig cfg = base_config("code");
    cfg.lambda = 0.5 + 2.0 * rng.uniform();
    cfg.R = 0.3 + rng.uniform();
    cfg.S = rng.uniform();

    oracles::LinearInstance in;
    in.lambda = cfg.lambda;
    in.delta = cfg.delta;
    in.L = cfg.L;
    in.S = cfg.S;
    in.R = cfg.R;

    CodeLinearPolicy policy(d, cfg);
    const int warm = rng.uniform_int(40);
    RoundContext obs_ctx;
    obs_ctx.t = 1;
    for (int i = 0; i < warm; ++i) {
      const VectorXd a = random_vector(d, rng);
      const double y = rng.uniform(-1.0, 1.0);
      obs_ctx.actions = a.transpose();
      policy.observe(obs_ctx, 0, y);
      in.observations.emplace_back(a, y);
    }

    RoundContext ctx;
    ctx.t = warm + 1;
    ctx.actions.resize(k, d);
    for (int i = 0; i < k; ++i) ctx.actions.row(i) = random_vector(d, rng).transpose();
    in.actions = ctx.actions;

    const Decision dec = policy.decide(ctx, rng);
    CHECK(dec.arm == oracles::code_linear_bruteforce(in));
    ++instance;
  }
}

TEST_CASE("k-armed and linear objectives agree on orthonormal actions") {
  // On basis actions with V = lambda I + sum T(a) e_a e_a^T and a vanishing
  // regularizer, argmax ||e_a||^2_{V^-1} is argmin T(a). Exhaustive over
  // small pull grids, then random larger ones.
  PolicyConfig lin_cfg = base_config("code");
  lin_cfg.lambda = 1e-8;
  const PolicyConfig karm_cfg = base_config("code");
  Rng rng(606);

  const auto check_case = [&](const std::vector<long>& pulls) {
    const int k = static_cast<int>(pulls.size());
    const auto ctx = basis_context(k);
    const VectorXd means = VectorXd::Constant(k, 0.5);

    CodeKArmedPolicy karmed(k, karm_cfg);
    force_karmed_state(karmed, ctx, pulls, means);

    CodeLinearPolicy linear(k, lin_cfg);
    for (int a = 0; a < k; ++a) {
      // One scaled observation realizes T(a) identical-direction pulls.
      RoundContext one;
      one.t = 1;
      VectorXd scaled = VectorXd::Zero(k);
      scaled(a) = std::sqrt(static_cast<double>(pulls[a]));
      one.actions = scaled.transpose();
      linear.observe(one, 0, means(a) * scaled(a));
    }

    CHECK(karmed.decide(ctx, rng).arm == linear.decide(ctx, rng).arm);
  };

  for (long a = 1; a <= 6; ++a)
    for (long b = 1; b <= 6; ++b)
      for (long c = 1; c <= 6; ++c) check_case({a, b, c});
  for (int i = 0; i < 300; ++i) {
    const int k = 2 + rng.uniform_int(5);
    std::vector<long> pulls(k);
    for (auto& p : pulls) p = 1 + rng.uniform_int(10);
    check_case(pulls);
  }
}

TEST_CASE("linucb reduces to greedy with zero width") {
  PolicyConfig cfg = base_config("linucb");
  cfg.R = 0.0;
  cfg.S = 0.0;
  LinUcbPolicy policy(2, cfg);
  RoundContext obs = context_from_rows({{1.0, 0.0}});
  policy.observe(obs, 0, 2.0);  // theta_hat becomes (1, 0)
  Rng rng(5);
  const Decision dec = policy.decide(basis_context(2), rng);
  CHECK(dec.arm == 0);
  CHECK(dec.view.theta_hat(0) == doctest::Approx(1.0));
}

TEST_CASE("linucb width dominates with a flat estimate") {
  LinUcbPolicy policy(2, base_config("linucb"));
  const auto ctx = context_from_rows({{0.5, 0.0}, {1.0, 0.0}});
  Rng rng(6);
  CHECK(policy.decide(ctx, rng).arm == 1);
}

TEST_CASE("linucb matches a direct index evaluation") {
  Rng rng(707);
  for (int instance = 0; instance < 100; ++instance) {
    const int d = 3, k = 5;
    PolicyConfig cfg = base_config("linucb");
    cfg.lambda = 0.5 + rng.uniform();
    LinUcbPolicy policy(d, cfg);

    MatrixXd v = cfg.lambda * MatrixXd::Identity(d, d);
    VectorXd xty = VectorXd::Zero(d);
    const int warm = 1 + rng.uniform_int(30);
    for (int i = 0; i < warm; ++i) {
      const VectorXd a = random_vector(d, rng);
      const double y = rng.uniform(-1.0, 1.0);
      RoundContext one;
      one.t = 1;
      one.actions = a.transpose();
      policy.observe(one, 0, y);
      v += a * a.transpose();
      xty += y * a;
    }

    RoundContext ctx;
    ctx.t = warm + 1;
    ctx.actions.resize(k, d);
    for (int i = 0; i < k; ++i) ctx.actions.row(i) = random_vector(d, rng).transpose();

    const VectorXd theta = v.fullPivLu().solve(xty);
    const double w =
        cfg.R * std::sqrt(double(d) * std::log((1.0 + warm * cfg.L * cfg.L /
                                                          cfg.lambda) /
                                               cfg.delta)) +
        std::sqrt(cfg.lambda) * cfg.S;
    VectorXd index(k);
    for (int i = 0; i < k; ++i) {
      const VectorXd a = ctx.actions.row(i).transpose();
      index(i) = a.dot(theta) + w * std::sqrt(oracles::dense_mahalanobis_sq(v, a));
    }
    Rng decide_rng(1);
    CHECK(policy.decide(ctx, decide_rng).arm == oracles::argmax_with_ties(index));
  }
}

TEST_CASE("lints: zero scale is greedy, fixed seed repeats, symmetry is fair") {
  PolicyConfig cfg = base_config("lints");
  cfg.ts_scale = 0.0;
  LinTsPolicy greedy(2, cfg);
  RoundContext obs = context_from_rows({{1.0, 0.0}});
  greedy.observe(obs, 0, 2.0);
  Rng rng(7);
  CHECK(greedy.decide(basis_context(2), rng).arm == 0);

  cfg.ts_scale = 1.0;
  const auto ctx = context_from_rows({{1.0, 0.0}, {-1.0, 0.0}});
  {
    LinTsPolicy a(2, cfg), b(2, cfg);
    Rng ra(99), rb(99);
    for (int i = 0; i < 20; ++i)
      CHECK(a.decide(ctx, ra).arm == b.decide(ctx, rb).arm);
  }
  {
    LinTsPolicy policy(2, cfg);
    Rng r(123);
    int first = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
      if (policy.decide(ctx, r).arm == 0) ++first;
    CHECK(double(first) / n == doctest::Approx(0.5).epsilon(0.04));
  }
}

TEST_CASE("egreedy exploration schedule") {
  {
    PolicyConfig cfg = base_config("egreedy");
    cfg.epsilon = 0.0;
    EpsGreedyPolicy policy(2, cfg);
    Rng rng(1);
    for (int t = 0; t < 50; ++t)
      CHECK(policy.decide(basis_context(2), rng).arm == 0);  // greedy, flat ties
    CHECK(policy.exploration_rounds() == 0);
  }
  {
    PolicyConfig cfg = base_config("egreedy");
    cfg.epsilon = 2.0;
    cfg.horizon = 1;
    EpsGreedyPolicy policy(2, cfg);
    Rng rng(2);
    policy.decide(basis_context(2), rng);
    CHECK(policy.exploration_rounds() == 1);  // min(1, .) clamps to prob 1
  }
  {
    // Expected exploration rounds ~ sum_t min(1, (eps/2) sqrt(n/t)).
    PolicyConfig cfg = base_config("egreedy");
    cfg.epsilon = 0.05;
    const long n = 10000;
    cfg.horizon = n;
    double expected = 0.0;
    for (long t = 1; t <= n; ++t)
      expected += std::min(1.0, 0.5 * cfg.epsilon * std::sqrt(double(n) / t));

    const auto ctx = basis_context(3);
    double total = 0.0;
    const int runs = 200;
    for (int run = 0; run < runs; ++run) {
      EpsGreedyPolicy policy(3, cfg);
      Rng rng(1000 + run);
      for (long t = 1; t <= n; ++t) {
        const Decision dec = policy.decide(ctx, rng);
        policy.observe(ctx, dec.arm, rng.uniform());
      }
      total += double(policy.exploration_rounds());
    }
    CHECK(total / runs == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("etc explores then commits to its own greedy choice") {
  {
    PolicyConfig cfg = base_config("etc");
    cfg.epsilon = 0.0;
    EtcPolicy policy(2, cfg);
    Rng rng(3);
    CHECK(policy.decide(basis_context(2), rng).arm == 0);  // greedy immediately
  }
  {
    PolicyConfig cfg = base_config("etc");
    cfg.epsilon = 1.0;
    cfg.horizon = 4000;
    EtcPolicy policy(3, cfg);
    Rng rng(4);
    std::map<int, int> counts;
    const auto ctx = basis_context(3);
    for (long t = 1; t <= 4000; ++t) ++counts[policy.decide(ctx, rng).arm];
    for (const auto& [arm, count] : counts) CHECK(count > 1100);  // near uniform
  }
  {
    PolicyConfig cfg = base_config("etc");
    cfg.epsilon = 0.05;
    cfg.horizon = 10000;
    EtcPolicy policy(2, cfg);
    Rng rng(5);
    const auto ctx = context_from_rows({{1.0, 0.0}, {0.0, 1.0}});

    MatrixXd v = cfg.lambda * MatrixXd::Identity(2, 2);
    VectorXd xty = VectorXd::Zero(2);
    for (long t = 1; t <= 1200; ++t) {
      const Decision dec = policy.decide(ctx, rng);
      if (t > 500) {
        // Committed: matches the greedy argmax under its own estimate.
        const VectorXd theta = v.fullPivLu().solve(xty);
        CHECK(dec.arm == oracles::argmax_with_ties(ctx.actions * theta));
      }
      const VectorXd a = ctx.actions.row(dec.arm).transpose();
      const double y = a(0) * 1.0 + a(1) * 0.2;
      policy.observe(ctx, dec.arm, y);
      v += a * a.transpose();
      xty += y * a;
    }
  }
}

TEST_CASE("phased elimination separates arms without noise") {
  // Gap 2 exceeds the first-phase radius 2 * 2^-1, so the weak arm goes
  // at the first elimination.
  PolicyConfig cfg = base_config("elim");
  cfg.horizon = 2000;
  PhasedElimPolicy policy(2, cfg);
  const auto ctx = basis_context(2);
  Rng rng(6);
  const VectorXd theta = (VectorXd(2) << 2.0, 0.0).finished();
  long arm1_after_elim = 0;
  int rounds_with_two_survivors = 0;
  for (long t = 1; t <= 400; ++t) {
    const Decision dec = policy.decide(ctx, rng);
    if (policy.survivors().size() == 2)
      ++rounds_with_two_survivors;
    else if (dec.arm == 1)
      ++arm1_after_elim;
    policy.observe(ctx, dec.arm, theta(dec.arm));
  }
  CHECK(policy.survivors().size() == 1);
  CHECK(policy.survivors()[0] == 0);
  CHECK(arm1_after_elim == 0);
  // d = 2, delta = 0.05: first phase length max(3, ceil(8 ln 20)) = 24.
  CHECK(rounds_with_two_survivors == 24);
}

TEST_CASE("phased elimination schedules uniformly over orthonormal survivors") {
  PolicyConfig cfg = base_config("elim");
  cfg.horizon = 5000;
  PhasedElimPolicy policy(4, cfg);
  const auto ctx = basis_context(4);
  Rng rng(7);
  // d = 4: first phase length max(10, ceil(16 ln 20)) = 48, 12 pulls each.
  std::map<int, int> counts;
  for (long t = 1; t <= 48; ++t) {
    const Decision dec = policy.decide(ctx, rng);
    ++counts[dec.arm];
    policy.observe(ctx, dec.arm, 0.5);
  }
  REQUIRE(counts.size() == 4);
  for (const auto& [arm, count] : counts) CHECK(count == 12);
}

TEST_CASE("phased elimination with one survivor plays it forever") {
  PolicyConfig cfg = base_config("elim");
  cfg.horizon = 4000;
  PhasedElimPolicy policy(2, cfg);
  const auto ctx = basis_context(2);
  Rng rng(8);
  const VectorXd theta = (VectorXd(2) << 3.0, 0.0).finished();
  for (long t = 1; t <= 2000; ++t) {
    const Decision dec = policy.decide(ctx, rng);
    policy.observe(ctx, dec.arm, theta(dec.arm));
    if (t > 200) CHECK(dec.arm == 0);
  }
}

TEST_CASE("calibrated delta inflates the k-armed widths") {
  PolicyConfig raw = base_config("code");
  PolicyConfig calibrated = base_config("code");
  calibrated.delta_calibrated = true;  // delta / (2 K n^2)
  const auto ctx = basis_context(2);
  CodeKArmedPolicy a(2, raw), b(2, calibrated);
  a.observe(ctx, 0, 0.5);
  b.observe(ctx, 0, 0.5);
  CHECK(b.confidence_width(0) > a.confidence_width(0));
  const double expect = std::sqrt(
      2.0 * std::log(2.0 * 2 * 1e4 * 1e4 / 0.05) / 1.0);
  CHECK(b.confidence_width(0) == doctest::Approx(expect));
}

TEST_CASE("etc freeze flag pins the estimate at the commit point") {
  const auto run_variant = [](bool freeze) {
    PolicyConfig cfg = base_config("etc");
    cfg.epsilon = 0.001;
    cfg.horizon = 2000;  // commit after round 2
    cfg.etc_freeze = freeze;
    EtcPolicy policy(2, cfg);
    const auto ctx = basis_context(2);
    Rng rng(11);
    policy.decide(ctx, rng);
    policy.observe(ctx, 0, 1.0);
    policy.decide(ctx, rng);
    policy.observe(ctx, 1, 0.0);
    const int committed_arm = policy.decide(ctx, rng).arm;  // greedy: arm 0
    // Contradicting evidence arrives after the commit point.
    for (int i = 0; i < 20; ++i) policy.observe(ctx, 1, 5.0);
    return std::make_pair(committed_arm, policy.decide(ctx, rng).arm);
  };
  const auto [frozen_first, frozen_later] = run_variant(true);
  CHECK(frozen_first == 0);
  CHECK(frozen_later == 0);  // still the frozen greedy choice
  const auto [live_first, live_later] = run_variant(false);
  CHECK(live_first == 0);
  CHECK(live_later == 1);  // live estimate switches
}

TEST_CASE("policy factory dispatch and rejection") {
  Rng rng(9);
  const Environment linear = gen_synthetic_linear(3, 5, 0.5, rng);
  const Environment changing = gen_synthetic_changing(3, 5, 0.5, rng);
  const Environment karmed = gen_k_armed_gap(4, 0.2, 0.5);

  CHECK(make_policy(base_config("code"), linear)->name() == "code");
  CHECK(dynamic_cast<CodeKArmedPolicy*>(
            make_policy(base_config("code"), karmed).get()) != nullptr);
  CHECK(dynamic_cast<CodeLinearPolicy*>(
            make_policy(base_config("code"), linear).get()) != nullptr);
  CHECK(make_policy(base_config("elim"), linear)->name() == "elim");
  CHECK_THROWS_AS(make_policy(base_config("elim"), changing), ConfigError);
  PolicyConfig bogus = base_config("zorp");
  CHECK_THROWS_AS(make_policy(bogus, linear), ConfigError);
}
