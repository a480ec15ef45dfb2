#include "su2k/qalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace su2k {

double q_number(int n, const Truncation& trunc) {
    return q_number_real(static_cast<double>(n), trunc);
}

double q_number_real(double n, const Truncation& trunc) {
    const double w = std::numbers::pi / (trunc.k + 2);
    return std::sin(w * n) / std::sin(w);
}

double q_factorial(int n, const Truncation& trunc) {
    if (n < 0) throw std::invalid_argument("q_factorial: negative argument");
    double p = 1.0;
    for (int m = 1; m <= n; ++m) p *= q_number(m, trunc);
    return p;
}

double triangle_delta(const SpinTriple& t, const Truncation& trunc) {
    const int a2 = t.j1.twoJ, b2 = t.j2.twoJ, c2 = t.j3.twoJ;
    if (!admissible2(a2, b2, c2, trunc.k)) return 0.0;
    // admissibility guarantees even doubled sums and a nonvanishing denominator
    return q_factorial((a2 + b2 - c2) / 2, trunc) *
           q_factorial((a2 - b2 + c2) / 2, trunc) *
           q_factorial((-a2 + b2 + c2) / 2, trunc) /
           q_factorial((a2 + b2 + c2) / 2 + 1, trunc);
}

double six_j(Spin a, Spin b, Spin e, Spin c, Spin d, Spin f, const Truncation& trunc) {
    const int k = trunc.k;
    const int a2 = a.twoJ, b2 = b.twoJ, e2 = e.twoJ, c2 = c.twoJ, d2 = d.twoJ, f2 = f.twoJ;

    if (!admissible2(a2, b2, e2, k) || !admissible2(a2, d2, f2, k) ||
        !admissible2(c2, b2, f2, k) || !admissible2(c2, d2, e2, k))
        return 0.0;

    // tetrads and triads; all doubled sums are even once the triads are admissible
    const int T2[3] = {a2 + b2 + c2 + d2, a2 + c2 + e2 + f2, b2 + d2 + e2 + f2};
    const int tau2[4] = {a2 + b2 + e2, a2 + d2 + f2, c2 + b2 + f2, c2 + d2 + e2};

    const int Jmin = *std::max_element(tau2, tau2 + 4) / 2;
    const int Jmax = *std::min_element(T2, T2 + 3) / 2;

    // first term of the Racah sum, then a running q-number recurrence in J
    double term = parity_sign(Jmin) * q_factorial(Jmin + 1, trunc);
    for (int n = 0; n < 3; ++n) term /= q_factorial(T2[n] / 2 - Jmin, trunc);
    for (int m = 0; m < 4; ++m) term /= q_factorial(Jmin - tau2[m] / 2, trunc);

    double sum = term;
    for (int J = Jmin; J < Jmax; ++J) {
        double ratio = -q_number(J + 2, trunc);
        for (int n = 0; n < 3; ++n) ratio *= q_number(T2[n] / 2 - J, trunc);
        for (int m = 0; m < 4; ++m) ratio /= q_number(J + 1 - tau2[m] / 2, trunc);
        term *= ratio;
        sum += term;
    }

    const double deltas = triangle_delta({a, b, e}, trunc) * triangle_delta({a, d, f}, trunc) *
                          triangle_delta({c, b, f}, trunc) * triangle_delta({c, d, e}, trunc);
    return std::sqrt(deltas) * sum;
}

double quantum_dim(Spin j, const Truncation& trunc) {
    return q_number(j.twoJ + 1, trunc);
}

double f_symbol(Spin a, Spin b, Spin e, Spin c, Spin d, Spin f, const Truncation& trunc) {
    const double w = six_j(a, b, e, c, d, f, trunc);
    const int s2 = a.twoJ + b.twoJ + c.twoJ + d.twoJ;
    if (s2 % 2 != 0) {
        // a half-integer phase exponent only occurs when the 6j vanishes
        if (std::abs(w) > 1e-12)
            throw std::logic_error("f_symbol: odd doubled phase exponent with nonzero 6j");
        return 0.0;
    }
    return parity_sign(s2 / 2) * std::sqrt(quantum_dim(e, trunc) * quantum_dim(f, trunc)) * w;
}

} // namespace su2k
