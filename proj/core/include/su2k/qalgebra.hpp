#pragma once

#include <complex>

#include "su2k/spin.hpp"

namespace su2k {

/// i^m for integer m; used to evaluate (-1)^x at half-integer x as i^(2x),
/// which removes any branch ambiguity.
inline std::complex<double> ipow(long long m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// (-1)^n for integer n.
inline double parity_sign(long long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

/// q-number [n]_k = sin(pi n/(k+2)) / sin(pi/(k+2)) for integer n.
double q_number(int n, const Truncation& trunc);

/// q-number at real argument; only the electric Casimir needs half-integer n.
double q_number_real(double n, const Truncation& trunc);

/// q-deformed factorial [n]! = prod_{m=1..n} [m], with [0]! = 1.
/// Negative n is a contract violation.
double q_factorial(int n, const Truncation& trunc);

/// q-deformed triangle delta of the Racah expansion,
///   Delta_abc = [a+b-c]! [a-b+c]! [-a+b+c]! / [a+b+c+1]!
/// gated by admissibility, so inadmissible triads give exactly 0 and the
/// vanishing denominator at fusion violation is never formed.
double triangle_delta(const SpinTriple& t, const Truncation& trunc);

/// q-deformed Wigner 6j symbol {a b e; c d f} via the deformed Racah sum.
/// Returns 0 whenever any of the four triads {abe, adf, cbf, cde} is
/// inadmissible.  The sum is evaluated with running products of q-numbers.
double six_j(Spin a, Spin b, Spin e, Spin c, Spin d, Spin f, const Truncation& trunc);

/// F-symbol [a b e; c d f] = (-1)^(a+b+c+d) sqrt(D(e) D(f)) {a b e; c d f}
/// with quantum dimension D(j) = [2j+1].  Real by construction.
double f_symbol(Spin a, Spin b, Spin e, Spin c, Spin d, Spin f, const Truncation& trunc);

/// Quantum dimension D_k(j) = [2j+1]_k.
double quantum_dim(Spin j, const Truncation& trunc);

} // namespace su2k
