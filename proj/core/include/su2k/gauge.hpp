#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "su2k/spin.hpp"

namespace su2k {

/// Exact non-negative integer with 128-bit range and overflow detection.
/// The transfer-matrix sweep reaches k in the hundreds, where d^8 leaves
/// 64-bit range; any overflow throws instead of wrapping.
struct PhysDim {
    unsigned __int128 value = 0;

    PhysDim() = default;
    PhysDim(unsigned long long v) : value(v) {}

    PhysDim& operator+=(PhysDim o);
    PhysDim& operator*=(PhysDim o);
    friend PhysDim operator+(PhysDim a, PhysDim b) { return a += b; }
    friend PhysDim operator*(PhysDim a, PhysDim b) { return a *= b; }
    friend bool operator==(PhysDim a, PhysDim b) { return a.value == b.value; }

    double as_double() const;
    std::string str() const;
};

/// Vertex adjacency matrix of the length-4 periodic contraction: entry
/// (l1, l2) counts external-link irreps compatible with active plaquette
/// links of doubled spins l1, l2.  Dense d x d of small integers.
struct AdjacencyMatrix {
    int d = 0;
    bool deformed = false;
    std::vector<std::int64_t> a; // row-major d*d

    std::int64_t operator()(int i, int j) const { return a[static_cast<size_t>(i) * d + j]; }
};

AdjacencyMatrix adjacency(const Truncation& trunc, bool deformed);

/// Physical subspace dimension of the 8-link plaquette section, Tr[A^4],
/// in exact integer arithmetic.
PhysDim phys_dim(const Truncation& trunc, bool deformed);

/// Closed form for the deformed dimension: h(k) for odd k and
/// h(k) + 315/10080 for even k, with h an order-8 polynomial in d = k+1.
/// The rational prefactor must divide out; a non-integral result throws.
PhysDim phys_dim_closed_form(const Truncation& trunc);

/// |H_phys^k| / |H_phys| at equal local truncation.
double retention_ratio(const Truncation& trunc);

/// One assignment of the eight links in the fixed register order
/// [j_l^t, j_l^b, q_l, j_a^t, j_a^b, q_r, j_r^t, j_r^b], doubled spins.
using LinkConfig = std::array<int, 8>;

/// Register indices for the eight system links plus the auxiliary qudit.
enum Reg : int { JLT = 0, JLB = 1, QL = 2, JAT = 3, JAB = 4, QR = 5, JRT = 6, JRB = 7, AUX = 8 };

/// The four plaquette vertices as index triples into a LinkConfig.
inline constexpr std::array<std::array<int, 3>, 4> kVertices = {{
    {JLT, JAT, QL},
    {JLB, QL, JAB},
    {JRT, QR, JAT},
    {JRB, JAB, QR},
}};

bool config_physical(const LinkConfig& c, const Truncation& trunc, bool deformed);

/// Brute-force enumeration of the physical 8-link configurations in
/// lexicographic order of the doubled-spin tuple.  This ordering is the
/// canonical physical-basis ordering used by the simulator.
/// Guarded at k <= 6 (output grows as d^8).
std::vector<LinkConfig> enumerate_physical(const Truncation& trunc, bool deformed);

} // namespace su2k
