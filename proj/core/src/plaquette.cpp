#include "su2k/plaquette.hpp"

#include <cmath>
#include <stdexcept>

#include "su2k/linalg.hpp"

namespace su2k {

void EvolutionParams::validate() const {
    if (!std::isfinite(tau)) throw std::invalid_argument("EvolutionParams: tau must be finite");
    if (g_squared <= 0) throw std::invalid_argument("EvolutionParams: g^2 must be positive");
    if (n_trotter < 1) throw std::invalid_argument("EvolutionParams: n_trotter must be >= 1");
}

double plaquette_element(const LinkConfig& bra, const LinkConfig& ket, const Truncation& trunc) {
    // external links carry an implied delta_{jj'}
    if (bra[JLT] != ket[JLT] || bra[JLB] != ket[JLB] || bra[JRT] != ket[JRT] || bra[JRB] != ket[JRB])
        return 0.0;

    const double fa = f_symbol(ket[JLT], ket[JAT], ket[QL], 1, bra[QL], bra[JAT], trunc);
    if (fa == 0.0) return 0.0;
    const double fb = f_symbol(ket[JLB], ket[QL], ket[JAB], 1, bra[JAB], bra[QL], trunc);
    if (fb == 0.0) return 0.0;
    const double fc = f_symbol(ket[JRT], ket[QR], ket[JAT], 1, bra[JAT], bra[QR], trunc);
    if (fc == 0.0) return 0.0;
    const double fd = f_symbol(ket[JRB], ket[JAB], ket[QR], 1, bra[QR], bra[JAB], trunc);
    if (fd == 0.0) return 0.0;

    // doubled exponent of (-1)^(-d j_a^t - d j_a^b + d q_l + d q_r)
    const int e2 = -(bra[JAT] - ket[JAT]) - (bra[JAB] - ket[JAB]) + (bra[QL] - ket[QL]) + (bra[QR] - ket[QR]);
    if (e2 % 2 != 0) throw std::logic_error("plaquette_element: non-integer phase exponent on a nonzero element");
    return parity_sign(e2 / 2) * fa * fb * fc * fd;
}

Eigen::MatrixXcd plaquette_block(const std::array<int, 4>& ext2, const Truncation& trunc) {
    const int d = trunc.dim();
    const int n = d * d * d * d;
    LinkConfig bra{}, ket{};
    bra[JLT] = ket[JLT] = ext2[0];
    bra[JLB] = ket[JLB] = ext2[1];
    bra[JRT] = ket[JRT] = ext2[2];
    bra[JRB] = ket[JRB] = ext2[3];

    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r) {
        int x = r;
        bra[QR] = x % d; x /= d;
        bra[JAB] = x % d; x /= d;
        bra[JAT] = x % d; x /= d;
        bra[QL] = x;
        for (int c = 0; c < n; ++c) {
            int y = c;
            ket[QR] = y % d; y /= d;
            ket[JAB] = y % d; y /= d;
            ket[JAT] = y % d; y /= d;
            ket[QL] = y;
            m(r, c) = plaquette_element(bra, ket, trunc);
        }
    }
    if (!is_hermitian(m, 1e-12)) throw std::logic_error("plaquette_block: Hermiticity check failed");
    return m;
}

Eigen::MatrixXcd plaquette_matrix(const Truncation& trunc) {
    if (trunc.k > 1) throw std::invalid_argument("plaquette_matrix: dense full-space assembly guarded at k <= 1");
    const int d = trunc.dim();
    long long n = 1;
    for (int i = 0; i < 8; ++i) n *= d;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);

    auto decode = [&](long long idx) {
        LinkConfig c{};
        for (int r = 7; r >= 0; --r) {
            c[r] = static_cast<int>(idx % d);
            idx /= d;
        }
        return c;
    };
    for (long long r = 0; r < n; ++r) {
        const LinkConfig bra = decode(r);
        for (long long c = 0; c < n; ++c) m(r, c) = plaquette_element(bra, decode(c), trunc);
    }
    if (!is_hermitian(m, 1e-12)) throw std::logic_error("plaquette_matrix: Hermiticity check failed");
    return m;
}

std::complex<double> phased_f_element(Move move, const std::vector<int>& controls2, Spin J, Spin j,
                                      const Truncation& trunc) {
    switch (move) {
        case Move::F1:
        case Move::F2: {
            // (-1)^(-j-J) [a b J; c d j]
            const auto& c2 = controls2;
            if (c2.size() != 4) throw std::invalid_argument("phased_f_element: F1/F2 take four controls");
            const double f = f_symbol(c2[0], c2[1], J, c2[2], c2[3], j, trunc);
            return ipow(-(j.twoJ + J.twoJ)) * f;
        }
        case Move::F3: {
            // phase (-1)^(j+J) and symbol [a b J; c c j] with c = j_a^b
            const auto& c2 = controls2;
            if (c2.size() != 3) throw std::invalid_argument("phased_f_element: F3 takes three controls");
            const double f = f_symbol(c2[0], c2[1], J, c2[2], c2[2], j, trunc);
            return ipow(j.twoJ + J.twoJ) * f;
        }
        case Move::G:
            break;
    }
    throw std::invalid_argument("phased_f_element: the G-move is not a phased F-move");
}

Eigen::MatrixXcd box_triple_prime(Spin J_a_t, const Truncation& trunc) {
    const int d = trunc.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int jp = 0; jp < d; ++jp) {
        for (int j = 0; j < d; ++j) {
            const double f = f_symbol(j, 1, jp, jp, J_a_t.twoJ, j, trunc);
            m(jp, j) = ipow(-(jp - j)) * f;
        }
    }
    if (J_a_t.half_integer()) {
        // gauge singlet at the {j_a^b, j_a^b, J_a^t} vertex kills these sectors
        if (max_abs(m) > 1e-12) throw std::logic_error("box_triple_prime: half-integer sector is not zero");
        return Eigen::MatrixXcd::Zero(d, d);
    }
    if (!is_hermitian(m, 1e-10)) throw std::logic_error("box_triple_prime: Hermiticity check failed");
    return m;
}

GMove g_move(Spin J_a_t, const Truncation& trunc) {
    const Eigen::MatrixXcd box = box_triple_prime(J_a_t, trunc);
    HermEig eig = hermitian_eig(box);
    GMove out;
    out.spectrum = eig.values;
    out.g = eig.vectors.adjoint(); // rows are the eigenvectors
    return out;
}

double electric_casimir(Spin j, const Truncation& trunc, bool deformed) {
    if (!deformed) return 0.25 * j.twoJ * (j.twoJ + 2);
    const double x = 0.5 * j.twoJ;
    return q_number_real(x, trunc) * q_number_real(x + 1.0, trunc);
}

bool fhi_check(const Truncation& trunc) {
    const int d = trunc.dim();
    for (int J2 = 0; J2 <= trunc.k; J2 += 2) {
        const Eigen::MatrixXcd m = box_triple_prime(J2, trunc);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (std::abs(m(i, j) - m(d - 1 - j, d - 1 - i)) > 1e-12) return false;
    }
    return true;
}

} // namespace su2k
