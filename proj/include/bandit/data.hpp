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

#ifndef BANDIT_DATA_HPP
#define BANDIT_DATA_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/rng.hpp"

namespace bandit {

// Numeric feature table read from a headered CSV. Features are rescaled at
// load time so the largest row norm is exactly 1 (so configs can assume
// action norms bounded by 1); the applied factor is kept for the record.
struct FeatureDataset {
  Eigen::MatrixXd rows;     // N x d
  Eigen::VectorXd targets;  // N
  std::vector<std::string> feature_names;
  std::string target_name;
  double norm_scale = 1.0;  // features were divided by this
};

// Sparse ratings in triplet form, user and item ids reindexed densely.
struct RatingsMatrix {
  std::vector<int> user;
  std::vector<int> item;
  std::vector<double> rating;
  int num_users = 0;
  int num_items = 0;
};

// Parses a comma-separated, headered, all-numeric CSV; the named column
// becomes the target and the rest the features. Parse failures report the
// offending row and column.
FeatureDataset load_feature_csv(const std::string& path,
                                const std::string& target_column);

// Columns user_id,item_id,rating. Ids may be arbitrary integers; they are
// reindexed to 0..U-1 / 0..I-1 in order of first appearance.
RatingsMatrix load_ratings_csv(const std::string& path);

// Ridge fit over the whole dataset; this estimate acts as the ground-truth
// parameter of the derived environment. lambda_fit = 0 requires full rank.
Eigen::VectorXd fit_theta_from_dataset(const FeatureDataset& ds,
                                       double lambda_fit);

// Residual standard deviation of the ridge fit, used as the default reward
// noise scale when a config does not pin sigma.
double residual_sigma(const FeatureDataset& ds, const Eigen::VectorXd& theta);

struct Factorization {
  Eigen::MatrixXd user_vectors;  // U x r
  Eigen::MatrixXd item_vectors;  // I x r
};

// Alternating ridge solves on the observed entries. The regularized
// objective is non-increasing per half-sweep (checked). Deterministic for a
// given rng.
Factorization als_factorize(const RatingsMatrix& ratings, int rank, int iters,
                            double lambda_als, Rng& rng);

// Observed-entry root-mean-square reconstruction error.
double observed_rmse(const RatingsMatrix& ratings, const Factorization& f);

// Fixed-action environment built by sampling num_actions rows (without
// replacement) from the vector pool; num_actions = 0 takes the whole pool.
Environment dataset_to_env(const Eigen::MatrixXd& vectors,
                           const Eigen::VectorXd& theta_star, int num_actions,
                           double sigma, Rng& rng);

}  // namespace bandit

#endif  // BANDIT_DATA_HPP
