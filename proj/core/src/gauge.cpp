#include "su2k/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace su2k {

namespace {

[[noreturn]] void overflow() { throw std::overflow_error("PhysDim: 128-bit overflow"); }

} // namespace

PhysDim& PhysDim::operator+=(PhysDim o) {
    unsigned __int128 r = value + o.value;
    if (r < value) overflow();
    value = r;
    return *this;
}

PhysDim& PhysDim::operator*=(PhysDim o) {
    if (value != 0 && o.value != 0) {
        unsigned __int128 r = value * o.value;
        if (r / value != o.value) overflow();
        value = r;
    } else {
        value = 0;
    }
    return *this;
}

double PhysDim::as_double() const {
    return static_cast<double>(value);
}

std::string PhysDim::str() const {
    if (value == 0) return "0";
    std::string s;
    unsigned __int128 v = value;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

AdjacencyMatrix adjacency(const Truncation& trunc, bool deformed) {
    const int k = trunc.k, d = trunc.dim();
    AdjacencyMatrix m;
    m.d = d;
    m.deformed = deformed;
    m.a.assign(static_cast<size_t>(d) * d, 0);
    for (int l1 = 0; l1 < d; ++l1) {
        for (int l2 = 0; l2 < d; ++l2) {
            // highest valid external index, parity-matched to l1+l2
            int hi;
            if (deformed) {
                hi = std::min(l1 + l2, 2 * k - l1 - l2);
            } else {
                hi = std::min(l1 + l2, k - (l1 + l2 + k) % 2);
            }
            const std::int64_t e = (hi - std::abs(l1 - l2)) / 2 + 1;
            if (e < 1) throw std::logic_error("adjacency: multiplicity below 1");
            m.a[static_cast<size_t>(l1) * d + l2] = e;
        }
    }
    return m;
}

PhysDim phys_dim(const Truncation& trunc, bool deformed) {
    const AdjacencyMatrix A = adjacency(trunc, deformed);
    const int d = A.d;
    // A^2 fits int64 for the k range we sweep (entries <= d * max(A)^2);
    // the trace of the fourth power is accumulated with 128-bit checks.
    std::vector<std::int64_t> a2(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) {
        for (int l = 0; l < d; ++l) {
            const std::int64_t ail = A(i, l);
            const std::int64_t* row = &A.a[static_cast<size_t>(l) * d];
            std::int64_t* out = &a2[static_cast<size_t>(i) * d];
            for (int j = 0; j < d; ++j) out[j] += ail * row[j];
        }
    }
    PhysDim tr;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const std::int64_t v = a2[static_cast<size_t>(i) * d + j];
            tr += PhysDim(static_cast<unsigned long long>(v)) * PhysDim(static_cast<unsigned long long>(v));
        }
    return tr;
}

PhysDim phys_dim_closed_form(const Truncation& trunc) {
    static constexpr unsigned long long coeff[8] = {1152, 2048, 2464, 2128, 1288, 532, 136, 17};
    const unsigned long long d = static_cast<unsigned long long>(trunc.dim());
    PhysDim num;
    PhysDim dp(1);
    for (int p = 0; p < 8; ++p) {
        dp *= PhysDim(d);
        num += PhysDim(coeff[p]) * dp;
    }
    if (trunc.k % 2 == 0) num += PhysDim(315);
    if (num.value % 10080 != 0)
        throw std::logic_error("phys_dim_closed_form: non-integral result");
    PhysDim out;
    out.value = num.value / 10080;
    return out;
}

double retention_ratio(const Truncation& trunc) {
    const PhysDim def = phys_dim(trunc, true);
    const PhysDim non = phys_dim(trunc, false);
    return def.as_double() / non.as_double();
}

bool config_physical(const LinkConfig& c, const Truncation& trunc, bool deformed) {
    for (const auto& v : kVertices) {
        const int a = c[v[0]], b = c[v[1]], e = c[v[2]];
        if (deformed ? !admissible2(a, b, e, trunc.k) : !gauge_singlet(a, b, e)) return false;
    }
    return true;
}

std::vector<LinkConfig> enumerate_physical(const Truncation& trunc, bool deformed) {
    if (trunc.k > 6) throw std::invalid_argument("enumerate_physical: k > 6 exceeds the enumeration guard");
    const int d = trunc.dim();
    std::vector<LinkConfig> out;
    LinkConfig c{};
    // lexicographic nest over the register order, pruning on each completed vertex
    for (c[JLT] = 0; c[JLT] < d; ++c[JLT])
    for (c[JLB] = 0; c[JLB] < d; ++c[JLB])
    for (c[QL] = 0; c[QL] < d; ++c[QL])
    for (c[JAT] = 0; c[JAT] < d; ++c[JAT]) {
        if (deformed ? !admissible2(c[JLT], c[JAT], c[QL], trunc.k)
                     : !gauge_singlet(c[JLT], c[JAT], c[QL])) continue;
        for (c[JAB] = 0; c[JAB] < d; ++c[JAB]) {
            if (deformed ? !admissible2(c[JLB], c[QL], c[JAB], trunc.k)
                         : !gauge_singlet(c[JLB], c[QL], c[JAB])) continue;
            for (c[QR] = 0; c[QR] < d; ++c[QR])
            for (c[JRT] = 0; c[JRT] < d; ++c[JRT]) {
                if (deformed ? !admissible2(c[JRT], c[QR], c[JAT], trunc.k)
                             : !gauge_singlet(c[JRT], c[QR], c[JAT])) continue;
                for (c[JRB] = 0; c[JRB] < d; ++c[JRB]) {
                    if (deformed ? !admissible2(c[JRB], c[JAB], c[QR], trunc.k)
                                 : !gauge_singlet(c[JRB], c[JAB], c[QR])) continue;
                    out.push_back(c);
                }
            }
        }
    }
    return out;
}

} // namespace su2k
