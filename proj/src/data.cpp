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

#include "bandit/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bandit/errors.hpp"

namespace bandit {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(cell, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  // Allow trailing whitespace only.
  while (consumed < cell.size() &&
         std::isspace(static_cast<unsigned char>(cell[consumed])))
    ++consumed;
  if (consumed != cell.size() || cell.empty())
    throw IoError("CSV parse error at row " + std::to_string(row) +
                  ", column " + std::to_string(col + 1) +
                  ": not a number: '" + cell + "'");
  if (!std::isfinite(value))
    throw IoError("CSV parse error at row " + std::to_string(row) +
                  ", column " + std::to_string(col + 1) + ": non-finite value");
  return value;
}

std::vector<std::vector<double>> read_numeric_csv(
    const std::string& path, std::vector<std::string>& header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CSV file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  header = split_csv_line(line);

  std::vector<std::vector<double>> table;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw IoError("CSV parse error at row " + std::to_string(row_no) +
                    ": expected " + std::to_string(header.size()) +
                    " cells, got " + std::to_string(cells.size()));
    std::vector<double> values(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      values[c] = parse_cell(cells[c], row_no, c);
    table.push_back(std::move(values));
  }
  if (table.empty()) throw IoError("CSV has a header but no rows: " + path);
  return table;
}

}  // namespace

FeatureDataset load_feature_csv(const std::string& path,
                                const std::string& target_column) {
  std::vector<std::string> header;
  const auto table = read_numeric_csv(path, header);

  const auto it = std::find(header.begin(), header.end(), target_column);
  if (it == header.end())
    throw IoError("target column '" + target_column + "' not found in " + path);
  const std::size_t target_idx = it - header.begin();

  FeatureDataset ds;
  ds.target_name = target_column;
  const std::size_t d = header.size() - 1;
  if (d == 0) throw IoError("CSV has no feature columns: " + path);
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != target_idx) ds.feature_names.push_back(header[c]);

  ds.rows.resize(table.size(), d);
  ds.targets.resize(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::size_t f = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == target_idx)
        ds.targets(r) = table[r][c];
      else
        ds.rows(r, f++) = table[r][c];
    }
  }

  const double max_norm = std::sqrt(ds.rows.rowwise().squaredNorm().maxCoeff());
  if (max_norm > 0.0) {
    ds.rows /= max_norm;
    ds.norm_scale = max_norm;
  }
  return ds;
}

RatingsMatrix load_ratings_csv(const std::string& path) {
  std::vector<std::string> header;
  const auto table = read_numeric_csv(path, header);
  if (header.size() != 3 || header[0] != "user_id" || header[1] != "item_id" ||
      header[2] != "rating")
    throw IoError("ratings CSV must have columns user_id,item_id,rating: " +
                  path);

  RatingsMatrix m;
  std::unordered_map<long, int> user_ids, item_ids;
  for (const auto& row : table) {
    const long u_raw = static_cast<long>(row[0]);
    const long i_raw = static_cast<long>(row[1]);
    auto [u_it, u_new] = user_ids.try_emplace(u_raw, m.num_users);
    if (u_new) ++m.num_users;
    auto [i_it, i_new] = item_ids.try_emplace(i_raw, m.num_items);
    if (i_new) ++m.num_items;
    m.user.push_back(u_it->second);
    m.item.push_back(i_it->second);
    m.rating.push_back(row[2]);
  }
  return m;
}

Eigen::VectorXd fit_theta_from_dataset(const FeatureDataset& ds,
                                       double lambda_fit) {
  const Eigen::Index d = ds.rows.cols();
  if (lambda_fit < 0.0)
    throw std::invalid_argument("fit_theta_from_dataset: lambda_fit < 0");
  if (lambda_fit == 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ds.rows);
    qr.setThreshold(1e-10);
    if (qr.rank() < d)
      throw std::runtime_error(
          "fit_theta_from_dataset: rank-deficient design with lambda_fit = 0");
    return qr.solve(ds.targets);
  }
  const Eigen::MatrixXd gram =
      ds.rows.transpose() * ds.rows +
      lambda_fit * Eigen::MatrixXd::Identity(d, d);
  return gram.llt().solve(ds.rows.transpose() * ds.targets);
}

double residual_sigma(const FeatureDataset& ds, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd residual = ds.targets - ds.rows * theta;
  const double n = static_cast<double>(residual.size());
  return std::sqrt(residual.squaredNorm() / n);
}

namespace {

// Regularized squared error on observed entries plus the ridge terms.
double als_objective(const RatingsMatrix& r, const Factorization& f,
                     double lambda_als) {
  double obj = 0.0;
  for (std::size_t k = 0; k < r.rating.size(); ++k) {
    const double e =
        r.rating[k] - f.user_vectors.row(r.user[k]).dot(f.item_vectors.row(r.item[k]));
    obj += e * e;
  }
  obj += lambda_als * f.user_vectors.squaredNorm();
  obj += lambda_als * f.item_vectors.squaredNorm();
  return obj;
}

// Ridge solve for one side given the other, over observed entries only.
void als_half_sweep(const RatingsMatrix& r, const Eigen::MatrixXd& fixed,
                    Eigen::MatrixXd& solved, const std::vector<int>& solved_ids,
                    const std::vector<int>& fixed_ids, double lambda_als) {
  const int rank = static_cast<int>(fixed.cols());
  const int n = static_cast<int>(solved.rows());
  std::vector<Eigen::MatrixXd> gram(n,
                                    lambda_als * Eigen::MatrixXd::Identity(rank, rank));
  std::vector<Eigen::VectorXd> rhs(n, Eigen::VectorXd::Zero(rank));
  for (std::size_t k = 0; k < r.rating.size(); ++k) {
    const int s = solved_ids[k];
    const Eigen::VectorXd v = fixed.row(fixed_ids[k]).transpose();
    gram[s].noalias() += v * v.transpose();
    rhs[s].noalias() += r.rating[k] * v;
  }
  for (int s = 0; s < n; ++s)
    solved.row(s) = gram[s].ldlt().solve(rhs[s]).transpose();
}

}  // namespace

Factorization als_factorize(const RatingsMatrix& ratings, int rank, int iters,
                            double lambda_als, Rng& rng) {
  if (ratings.rating.empty())
    throw std::invalid_argument("als_factorize: no ratings");
  if (rank < 1) throw std::invalid_argument("als_factorize: rank must be >= 1");

  std::vector<long> user_count(ratings.num_users, 0),
      item_count(ratings.num_items, 0);
  for (std::size_t k = 0; k < ratings.rating.size(); ++k) {
    ++user_count[ratings.user[k]];
    ++item_count[ratings.item[k]];
  }
  if (std::find(user_count.begin(), user_count.end(), 0L) != user_count.end() ||
      std::find(item_count.begin(), item_count.end(), 0L) != item_count.end())
    throw std::invalid_argument(
        "als_factorize: every user and item needs at least one rating");

  Factorization f;
  f.user_vectors.resize(ratings.num_users, rank);
  f.item_vectors.resize(ratings.num_items, rank);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rank));
  for (Eigen::Index i = 0; i < f.item_vectors.rows(); ++i)
    for (Eigen::Index j = 0; j < f.item_vectors.cols(); ++j)
      f.item_vectors(i, j) = scale * rng.normal();
  f.user_vectors.setZero();

  const double lambda = lambda_als > 0.0 ? lambda_als : 1e-9;
  double prev = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < iters; ++sweep) {
    als_half_sweep(ratings, f.item_vectors, f.user_vectors, ratings.user,
                   ratings.item, lambda);
    double obj = als_objective(ratings, f, lambda);
    if (obj > prev + 1e-9 * std::max(1.0, prev))
      throw std::logic_error("als_factorize: objective increased (user sweep)");
    prev = obj;
    als_half_sweep(ratings, f.user_vectors, f.item_vectors, ratings.item,
                   ratings.user, lambda);
    obj = als_objective(ratings, f, lambda);
    if (obj > prev + 1e-9 * std::max(1.0, prev))
      throw std::logic_error("als_factorize: objective increased (item sweep)");
    prev = obj;
  }
  return f;
}

double observed_rmse(const RatingsMatrix& ratings, const Factorization& f) {
  double sq = 0.0;
  for (std::size_t k = 0; k < ratings.rating.size(); ++k) {
    const double e = ratings.rating[k] - f.user_vectors.row(ratings.user[k])
                                             .dot(f.item_vectors.row(ratings.item[k]));
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(ratings.rating.size()));
}

Environment dataset_to_env(const Eigen::MatrixXd& vectors,
                           const Eigen::VectorXd& theta_star, int num_actions,
                           double sigma, Rng& rng) {
  const int pool = static_cast<int>(vectors.rows());
  if (num_actions > pool)
    throw ConfigError("dataset_to_env: requested " +
                      std::to_string(num_actions) + " actions from a pool of " +
                      std::to_string(pool));
  if (num_actions <= 0 || num_actions == pool)
    return Environment::linear_fixed(vectors, theta_star, sigma);

  // Partial Fisher-Yates draw without replacement.
  std::vector<int> order(pool);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < num_actions; ++i) {
    const int j = i + rng.uniform_int(pool - i);
    std::swap(order[i], order[j]);
  }
  Eigen::MatrixXd chosen(num_actions, vectors.cols());
  for (int i = 0; i < num_actions; ++i) chosen.row(i) = vectors.row(order[i]);
  return Environment::linear_fixed(std::move(chosen), theta_star, sigma);
}

}  // namespace bandit
