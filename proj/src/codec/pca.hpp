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

#ifndef GSC_CODEC_PCA_HPP
#define GSC_CODEC_PCA_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace gsc::codec {

// Row-orthonormal k x d projection plus the sample mean.
//
// Components are ordered by decreasing eigenvalue; each row's first entry with
// |v| > 1e-9 is positive. Directions with (numerically) zero variance are
// completed from the standard basis by Gram-Schmidt, in index order.
class PcaBasis {
 public:
  PcaBasis() = default;
  PcaBasis(std::string basis_id, Eigen::VectorXd mean, Eigen::MatrixXd components,
           Eigen::VectorXd variances);

  const std::string& basis_id() const { return basis_id_; }
  int dim() const { return static_cast<int>(mean_.size()); }
  int rank() const { return static_cast<int>(components_.rows()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& components() const { return components_; }
  // Eigenvalue of each retained component.
  const Eigen::VectorXd& variances() const { return variances_; }

  // Leading `k` components, same id.
  PcaBasis Truncated(int k) const;

  std::vector<double> Project(std::span<const double> x) const;
  std::vector<double> Reconstruct(std::span<const double> y) const;

 private:
  std::string basis_id_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd components_;
  Eigen::VectorXd variances_;
};

// Fits the top-`rank` principal components of `samples` (all of equal length
// d). Requires 1 <= rank <= d and at least `rank` samples.
PcaBasis FitBasis(std::span<const std::vector<double>> samples, int rank,
                  std::string basis_id);

}  // namespace gsc::codec

#endif  // GSC_CODEC_PCA_HPP
