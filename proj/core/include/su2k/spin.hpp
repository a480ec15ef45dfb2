#pragma once

#include <stdexcept>

namespace su2k {

/// Local truncation of the gauge field.  Link irreps run over
/// j = 0, 1/2, ..., k/2, so every link register has dimension d = k + 1.
/// The deformation parameter q = exp(i 2pi/(k+2)) is implied by k and is
/// never carried around as a floating-point angle.
struct Truncation {
    int k;

    explicit Truncation(int k_) : k(k_) {
        if (k < 0) throw std::invalid_argument("Truncation: k must be non-negative");
    }

    int dim() const { return k + 1; }
};

/// Angular momentum as a doubled integer (twoJ = 2j).  Keeping the doubling
/// explicit makes parity and triangle checks exact integer arithmetic.
struct Spin {
    int twoJ;

    constexpr Spin(int twoJ_ = 0) : twoJ(twoJ_) {}

    constexpr bool half_integer() const { return twoJ % 2 != 0; }
    constexpr double j() const { return 0.5 * twoJ; }

    bool within(const Truncation& t) const { return twoJ >= 0 && twoJ <= t.k; }

    friend constexpr bool operator==(Spin a, Spin b) { return a.twoJ == b.twoJ; }
};

/// One three-point vertex worth of flux.
struct SpinTriple {
    Spin j1, j2, j3;
};

/// Gauge singlet conditions of the non-deformed theory: integer total
/// angular momentum plus the three triangle inequalities.  Pure integers.
inline bool gauge_singlet(int a2, int b2, int c2) {
    if (a2 < 0 || b2 < 0 || c2 < 0) return false;
    if ((a2 + b2 + c2) % 2 != 0) return false;
    return a2 + b2 >= c2 && b2 + c2 >= a2 && c2 + a2 >= b2;
}

/// Vertex admissibility of the q-deformed theory: gauge singlet conditions
/// plus the fusion constraint j1 + j2 + j3 <= k.
inline bool admissible2(int a2, int b2, int c2, int k) {
    return gauge_singlet(a2, b2, c2) && a2 + b2 + c2 <= 2 * k;
}

inline bool admissible(const SpinTriple& t, const Truncation& trunc) {
    return admissible2(t.j1.twoJ, t.j2.twoJ, t.j3.twoJ, trunc.k);
}

} // namespace su2k
