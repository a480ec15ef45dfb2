#include "su2k/fsequence.hpp"

#include <array>
#include <cmath>
#include <map>

#include "su2k/linalg.hpp"

namespace su2k {

namespace {

// internal block index over (q_l, j_a^t, j_a^b, q_r), row-major
int iidx(int d, int ql, int jat, int jab, int qr) { return ((ql * d + jat) * d + jab) * d + qr; }

struct Internal {
    int ql, jat, jab, qr;
};

Internal idecode(int d, int i) {
    Internal s{};
    s.qr = i % d; i /= d;
    s.jab = i % d; i /= d;
    s.jat = i % d; i /= d;
    s.ql = i;
    return s;
}

// GVC-completed sector matrix; invalid sectors complete to the identity
Eigen::MatrixXcd sector_matrix(Move mv, const std::vector<int>& c2, const Truncation& trunc,
                               std::map<std::pair<int, std::vector<int>>, Eigen::MatrixXcd>& cache) {
    const auto key = std::make_pair(static_cast<int>(mv), c2);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    Eigen::MatrixXcd u;
    if (auto sec = sector_at(mv, c2, trunc))
        u = gvc_complete(*sec, trunc).matrix;
    else
        u = Eigen::MatrixXcd::Identity(trunc.dim(), trunc.dim());
    cache.emplace(key, u);
    return u;
}

// restriction of a GVC-completed move to one external sector
Eigen::MatrixXcd move_block(Move mv, const std::array<int, 4>& ext2, const Truncation& trunc,
                            std::map<std::pair<int, std::vector<int>>, Eigen::MatrixXcd>& cache) {
    const int d = trunc.dim();
    const int n = d * d * d * d;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    const int jlt = ext2[0], jlb = ext2[1], jrt = ext2[2], jrb = ext2[3];
    for (int c = 0; c < n; ++c) {
        const Internal s = idecode(d, c);
        std::vector<int> c2;
        int from = 0;
        switch (mv) {
            case Move::F1: c2 = {jlt, jlb, s.jab, s.jat}; from = s.ql; break;
            case Move::F2: c2 = {s.jat, s.jab, jrb, jrt}; from = s.qr; break;
            case Move::F3: c2 = {s.ql, s.qr, s.jab}; from = s.jat; break;
            case Move::G: throw std::logic_error("move_block: G not used here");
        }
        const Eigen::MatrixXcd sm = sector_matrix(mv, c2, trunc, cache);
        for (int to = 0; to < d; ++to) {
            if (sm(to, from) == std::complex<double>(0, 0)) continue;
            Internal t = s;
            if (mv == Move::F1) t.ql = to;
            else if (mv == Move::F2) t.qr = to;
            else t.jat = to;
            u(iidx(d, t.ql, t.jat, t.jab, t.qr), c) = sm(to, from);
        }
    }
    return u;
}

std::complex<double> formula_step(int step, const std::array<int, 4>& ext2, const Internal& bra,
                                  const Internal& ket, const Truncation& trunc) {
    const int k = trunc.k;
    const int jlt = ext2[0], jlb = ext2[1], jrt = ext2[2], jrb = ext2[3];
    // the doubled exponent can be odd here: phased intermediate operators
    // carry +-i elements
    auto sign_half = [](int e2) { return ipow(e2); };
    switch (step) {
        case 1: {
            if (bra.ql != ket.ql) return 0.0;
            if (!admissible2(jlt, jlb, ket.ql, k)) return 0.0;
            const int e2 = -(bra.jat - ket.jat) - (bra.jab - ket.jab) + (bra.qr - ket.qr);
            const double f1 = f_symbol(1, bra.jab, ket.jab, ket.ql, ket.jat, bra.jat, trunc);
            const double f2 = f_symbol(jrt, ket.qr, ket.jat, 1, bra.jat, bra.qr, trunc);
            const double f3 = f_symbol(jrb, ket.jab, ket.qr, 1, bra.qr, bra.jab, trunc);
            if (f1 * f2 * f3 == 0.0) return 0.0;
            return sign_half(e2) * f1 * f2 * f3;
        }
        case 2: {
            if (bra.ql != ket.ql || bra.qr != ket.qr) return 0.0;
            if (!admissible2(jlt, jlb, ket.ql, k) || !admissible2(jrt, jrb, ket.qr, k)) return 0.0;
            const int e2 = -(bra.jat - ket.jat) - (bra.jab - ket.jab);
            const double f1 = f_symbol(1, bra.jab, ket.jab, ket.ql, ket.jat, bra.jat, trunc);
            const double f2 = f_symbol(1, bra.jat, ket.jat, ket.qr, ket.jab, bra.jab, trunc);
            if (f1 * f2 == 0.0) return 0.0;
            return sign_half(e2) * f1 * f2;
        }
        case 3: {
            if (bra.ql != ket.ql || bra.qr != ket.qr || bra.jat != ket.jat) return 0.0;
            if (!admissible2(jlt, jlb, ket.ql, k) || !admissible2(jrt, jrb, ket.qr, k) ||
                !admissible2(ket.ql, ket.qr, ket.jat, k))
                return 0.0;
            const int e2 = -(bra.jab - ket.jab);
            const double f = f_symbol(ket.jab, 1, bra.jab, bra.jab, ket.jat, ket.jab, trunc);
            if (f == 0.0) return 0.0;
            return sign_half(e2) * f;
        }
    }
    return 0.0;
}

bool physical_step(int step, const std::array<int, 4>& ext2, const Internal& s, const Truncation& trunc) {
    const int k = trunc.k;
    const int jlt = ext2[0], jlb = ext2[1], jrt = ext2[2], jrb = ext2[3];
    switch (step) {
        case 1:
            return admissible2(jlt, jlb, s.ql, k) && admissible2(s.jat, s.jab, s.ql, k) &&
                   admissible2(jrt, s.qr, s.jat, k) && admissible2(jrb, s.jab, s.qr, k);
        case 2:
            return admissible2(jlt, jlb, s.ql, k) && admissible2(s.jat, s.jab, s.ql, k) &&
                   admissible2(jrt, jrb, s.qr, k) && admissible2(s.jat, s.jab, s.qr, k);
        case 3:
            return admissible2(jlt, jlb, s.ql, k) && admissible2(jrt, jrb, s.qr, k) &&
                   admissible2(s.ql, s.qr, s.jat, k) && admissible2(s.jab, s.jab, s.jat, k);
    }
    return false;
}

} // namespace

FSequenceReport verify_f_sequence(const Truncation& trunc, double tol) {
    if (trunc.k > 3) throw std::invalid_argument("verify_f_sequence: dense conjugation guarded at k <= 3");
    const int d = trunc.dim();
    const int n = d * d * d * d;
    FSequenceReport rep;
    std::map<std::pair<int, std::vector<int>>, Eigen::MatrixXcd> cache;

    std::array<int, 4> ext2{};
    for (ext2[0] = 0; ext2[0] < d; ++ext2[0])
        for (ext2[1] = 0; ext2[1] < d; ++ext2[1])
            for (ext2[2] = 0; ext2[2] < d; ++ext2[2])
                for (ext2[3] = 0; ext2[3] < d; ++ext2[3]) {
                    const int esec = ((ext2[0] * d + ext2[1]) * d + ext2[2]) * d + ext2[3];
                    Eigen::MatrixXcd m = plaquette_block(ext2, trunc);
                    for (int step = 1; step <= 3; ++step) {
                        const Move mv = (step == 1) ? Move::F1 : (step == 2) ? Move::F2 : Move::F3;
                        const Eigen::MatrixXcd u = move_block(mv, ext2, trunc, cache);
                        m = (u * m * u.adjoint()).eval();

                        std::vector<int> phys;
                        for (int i = 0; i < n; ++i)
                            if (physical_step(step, ext2, idecode(d, i), trunc)) phys.push_back(i);

                        double dev = 0.0;
                        for (int r : phys)
                            for (int c : phys) {
                                const std::complex<double> want =
                                    formula_step(step, ext2, idecode(d, r), idecode(d, c), trunc);
                                dev = std::max(dev, std::abs(m(r, c) - want));
                            }
                        rep.entries.push_back({"F" + std::to_string(step), esec, dev, dev < tol});
                        rep.max_dev = std::max(rep.max_dev, dev);
                    }
                }
    return rep;
}

} // namespace su2k
