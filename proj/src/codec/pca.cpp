// Copyright 2026 The GSC Authors.
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

#include "codec/pca.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "common/error.hpp"

namespace gsc::codec {

namespace {

constexpr double kSignEpsilon = 1e-9;

void FixSign(Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (std::abs(row(i)) > kSignEpsilon) {
      if (row(i) < 0) row = -row;
      return;
    }
  }
}

}  // namespace

PcaBasis::PcaBasis(std::string basis_id, Eigen::VectorXd mean,
                   Eigen::MatrixXd components, Eigen::VectorXd variances)
    : basis_id_(std::move(basis_id)),
      mean_(std::move(mean)),
      components_(std::move(components)),
      variances_(std::move(variances)) {}

PcaBasis PcaBasis::Truncated(int k) const {
  if (k < 1 || k > rank()) {
    Fail(ErrorCode::kInvalidArgument, "cannot truncate rank-" +
                                          std::to_string(rank()) +
                                          " basis to " + std::to_string(k));
  }
  return PcaBasis(basis_id_, mean_, components_.topRows(k), variances_.head(k));
}

std::vector<double> PcaBasis::Project(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) {
    Fail(ErrorCode::kDimensionMismatch,
         "project: vector of length " + std::to_string(x.size()) +
             " against basis of dim " + std::to_string(dim()));
  }
  Eigen::Map<const Eigen::VectorXd> v(x.data(), dim());
  Eigen::VectorXd y = components_ * (v - mean_);
  return std::vector<double>(y.data(), y.data() + y.size());
}

std::vector<double> PcaBasis::Reconstruct(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != rank()) {
    Fail(ErrorCode::kDimensionMismatch,
         "reconstruct: vector of length " + std::to_string(y.size()) +
             " against basis of rank " + std::to_string(rank()));
  }
  Eigen::Map<const Eigen::VectorXd> c(y.data(), rank());
  Eigen::VectorXd x = components_.transpose() * c + mean_;
  return std::vector<double>(x.data(), x.data() + x.size());
}

PcaBasis FitBasis(std::span<const std::vector<double>> samples, int rank,
                  std::string basis_id) {
  if (samples.empty()) Fail(ErrorCode::kInvalidArgument, "fit_basis: no samples");
  const int d = static_cast<int>(samples[0].size());
  if (rank < 1 || rank > d) {
    Fail(ErrorCode::kInvalidArgument, "fit_basis: rank " + std::to_string(rank) +
                                          " outside [1, " + std::to_string(d) + "]");
  }
  if (static_cast<int>(samples.size()) < rank) {
    Fail(ErrorCode::kInvalidArgument,
         "fit_basis: " + std::to_string(samples.size()) +
             " samples is fewer than rank " + std::to_string(rank));
  }

  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd data(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<int>(samples[i].size()) != d) {
      Fail(ErrorCode::kDimensionMismatch,
           "fit_basis: sample " + std::to_string(i) + " has length " +
               std::to_string(samples[i].size()) + ", expected " + std::to_string(d));
    }
    data.row(i) = Eigen::Map<const Eigen::RowVectorXd>(samples[i].data(), d);
  }
  Eigen::VectorXd mean = data.colwise().mean().transpose();
  data.rowwise() -= mean.transpose();
  Eigen::MatrixXd cov = (data.transpose() * data) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    Fail(ErrorCode::kInvalidArgument, "fit_basis: eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& evecs = solver.eigenvectors();
  const double top = std::max(evals(d - 1), 0.0);
  const double floor = top * 1e-12 * d;

  Eigen::MatrixXd comps(rank, d);
  Eigen::VectorXd vars = Eigen::VectorXd::Zero(rank);
  int filled = 0;
  for (int j = d - 1; j >= 0 && filled < rank; --j) {
    if (top == 0.0 || evals(j) <= floor) break;
    comps.row(filled) = evecs.col(j).transpose();
    vars(filled) = evals(j);
    ++filled;
  }
  // Orthonormal completion for the zero-variance remainder.
  for (int e = 0; e < d && filled < rank; ++e) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Unit(d, e);
    for (int pass = 0; pass < 2; ++pass) {
      for (int r = 0; r < filled; ++r) v -= v.dot(comps.row(r)) * comps.row(r);
    }
    double norm = v.norm();
    if (norm > 1e-6) comps.row(filled++) = v / norm;
  }
  for (int r = 0; r < rank; ++r) FixSign(comps.row(r));
  return PcaBasis(std::move(basis_id), std::move(mean), std::move(comps),
                  std::move(vars));
}

}  // namespace gsc::codec
