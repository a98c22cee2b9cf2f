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

#ifndef BANDIT_DESIGN_HPP
#define BANDIT_DESIGN_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace bandit {

// Approximate D-optimal design over a finite action set: a probability
// distribution pi on the actions together with the G-criterion value
//   g = max_a ||a||^2_{M(pi)^-1},   M(pi) = sum_a pi(a) a a^T.
// By the Kiefer-Wolfowitz equivalence, g >= effective_dim always, with
// equality at the optimum.
struct Design {
  std::vector<std::pair<int, double>> support;  // (action index, weight > 0)
  double g_value = 0.0;
  int effective_dim = 0;
};

// Frank-Wolfe with exact line search, initialized from a volumetric-greedy
// spanning subset. Rank-deficient action sets are projected onto their span
// and solved there. Returns a design with g <= (1 + tol) * effective_dim,
// or the best iterate found if the iteration cap is hit (a warning is
// printed in that case).
Design d_optimal_design(const Eigen::MatrixXd& actions, double tol,
                        int max_iters = 10000);

// Integer pull counts for a total budget m: ceiling rounding per support
// action, trimming excess from the largest allocations. Counts stay >= 1,
// sum to m, and deviate from m * pi(a) by at most |support|.
// Returned counts align with design.support.
std::vector<long> round_allocation(const Design& design, long m);

}  // namespace bandit

#endif  // BANDIT_DESIGN_HPP
