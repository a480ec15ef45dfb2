#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "su2k/gatelist.hpp"

namespace su2k {

/// Hermitian eigendecomposition with deterministic ordering: eigenvalues
/// descending, degenerate groups (1e-9) ordered by lexicographic comparison
/// of rounded eigenvector entries, and each eigenvector's largest-magnitude
/// component rotated real positive.
struct HermEig {
    Eigen::VectorXd values;  // descending
    Eigen::MatrixXcd vectors; // column i is the eigenvector of values[i]
};
HermEig hermitian_eig(const Eigen::MatrixXcd& h, double herm_tol = 1e-10);

/// Eigendecomposition of a unitary (normal) matrix: u = V diag(e^{i beta}) V^dag
/// with orthonormal columns V, deterministic ordering and phase fixing.
struct UnitaryEig {
    Eigen::VectorXd angles;  // beta in (-pi, pi]
    Eigen::MatrixXcd vectors;
};
UnitaryEig unitary_eig(const Eigen::MatrixXcd& u, double tol = 1e-10);

double max_abs(const Eigen::MatrixXcd& m);
bool is_unitary(const Eigen::MatrixXcd& m, double tol = 1e-12);
bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-10);

/// Lower a dense unitary acting on a level subset of one register into
/// two-level GIVENS rotations plus a trailing DIAG, appended to `out`.
/// Contributes no GCX gates.
void synthesize_local_unitary(GateList& out, int target, const std::vector<int>& levels,
                              const Eigen::MatrixXcd& u);

} // namespace su2k
