#pragma once

#include <Eigen/Dense>

#include "pathspace/common.hpp"

namespace pathspace {

using Matrix = Eigen::MatrixXcd;

/// max |G - G^*| entrywise.
double hermitian_defect(const Matrix& g);
/// max |G_ij| entrywise.
double max_abs(const Matrix& g);

/// Minimum eigenvalue of the Hermitian part (G + G^*)/2.
double min_eigenvalue(const Matrix& g);

/// Minimum eigenvalue of the form restricted to {lambda : sum lambda_i = 0},
/// using the Helmert orthonormal basis of that subspace.
double min_projected_eigenvalue(const Matrix& g);

/// Numerical rank of a PSD matrix: eigenvalues above cutoff * lambda_max.
int psd_rank(const Matrix& g, double cutoff = 1e-10);

/// True when min eig >= -kEigTol * max(1, scale).
inline bool certifies_psd(double min_eig, double scale) {
    return min_eig >= -kEigTol * std::max(1.0, scale);
}

}  // namespace pathspace
