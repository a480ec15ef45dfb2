#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "su2k/gauge.hpp"
#include "su2k/qalgebra.hpp"

namespace su2k {

/// The three phased F-moves of the diagonalization sequence plus the
/// diagonalizing G-move.
enum class Move { F1, F2, F3, G };

/// Trotter-step parameters; tau = t / (g^2 N_T).
struct EvolutionParams {
    double tau = 0.0;
    double g_squared = 1.0;
    int n_trotter = 1;

    void validate() const;
};

/// Magnetic plaquette matrix element between two 8-link basis states.
/// External links act as controls: any mismatch there gives 0.  The phase
/// exponent is integer whenever the element is nonzero (asserted on
/// doubled integers); elements are real.
double plaquette_element(const LinkConfig& bra, const LinkConfig& ket, const Truncation& trunc);

/// Dense plaquette block at fixed external links (j_l^t, j_l^b, j_r^t, j_r^b),
/// over the internal registers in row-major order (q_l, j_a^t, j_a^b, q_r).
/// Hermiticity is verified on construction.
Eigen::MatrixXcd plaquette_block(const std::array<int, 4>& ext2, const Truncation& trunc);

/// Full d^8 x d^8 plaquette operator; dense assembly is guarded at k <= 1
/// (use the external-sector blocks above for larger k).
Eigen::MatrixXcd plaquette_matrix(const Truncation& trunc);

/// Phased F-move amplitude <J| F_move |j> for the given control sector.
/// Controls are doubled spins: F1/F2 take {a,b,c,d}, F3 takes {a,b,c} with
/// the symbol's repeated lower label c = j_a^b.  Phases are evaluated as
/// i-powers on doubled integers.
std::complex<double> phased_f_element(Move move, const std::vector<int>& controls2, Spin J, Spin j,
                                      const Truncation& trunc);

/// Transformed plaquette operator in control sector J_a^t, a d x d matrix
/// over the |j_a^b> register.  Tridiagonal, Hermitian, purely imaginary;
/// identically zero for half-integer J_a^t (asserted).
Eigen::MatrixXcd box_triple_prime(Spin J_a_t, const Truncation& trunc);

/// Diagonalizer of box_triple_prime: g * box * g^dag = diag(spectrum) with
/// eigenvalues sorted descending and a fixed eigenvector phase convention.
struct GMove {
    Eigen::MatrixXcd g;
    Eigen::VectorXd spectrum;
};
GMove g_move(Spin J_a_t, const Truncation& trunc);

/// Electric Casimir eigenvalue: j(j+1), or [j][j+1] when deformed.
double electric_casimir(Spin j, const Truncation& trunc, bool deformed);

/// Flux hierarchy inversion: every integer-J_a^t sector of box_triple_prime
/// is persymmetric, entry(j,j') = entry(k/2-j', k/2-j), to 1e-12.
bool fhi_check(const Truncation& trunc);

} // namespace su2k
