#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "su2k/gatelist.hpp"
#include "su2k/plaquette.hpp"

namespace su2k {

enum class Scheme { nondeformed_reference, baseline, reduced, parity_k1 };

const char* scheme_name(Scheme s);

/// One control sector of a move: a fixed assignment of the control
/// registers admitting at least one physical active-link value on the
/// original lattice.  sources/targets are the valid doubled active-link
/// values before/after the move, sorted ascending.
struct ControlSector {
    Move move;
    std::vector<int> controls2; // 4 for F1/F2, 3 for F3, 1 for G
    std::vector<int> sources;
    std::vector<int> targets;

    int m() const { return static_cast<int>(sources.size()); }
    bool crossing() const { return sources != targets; }
};

/// All valid control sectors of a move in lexicographic control order.
/// List lengths reproduce N4(k), N3(k), N1(k).
std::vector<ControlSector> control_sectors(Move move, const Truncation& trunc);

/// Sector for an explicit control assignment, or an empty optional when no
/// physical active-link value exists there.
std::optional<ControlSector> sector_at(Move move, const std::vector<int>& controls2,
                                       const Truncation& trunc);

/// Combinatorial factors C_p^{(4)}, C_p^{(3)} of the level distributions.
long long comb_c4(int p);
long long comb_c3(int p);

/// Number of m-level unitaries required for an ell-controlled move:
/// n4(m,k), n3(m,k) for ell = 4, 3 and the G/box parity rule for ell = 1.
long long level_distribution(int ell, int m, const Truncation& trunc);

/// Total control sector counts N4, N3, N1 in closed form.
long long sector_count(int ell, const Truncation& trunc);

/// Gauge-variant completion of a phased F-move sector: a full d x d
/// unitary whose physical block equals the phased F amplitudes exactly.
struct GvcUnitary {
    ControlSector sector;
    Eigen::MatrixXcd matrix;
    std::vector<int> active_levels; // the m target levels

    int m() const { return static_cast<int>(active_levels.size()); }
};

GvcUnitary gvc_complete(const ControlSector& sector, const Truncation& trunc);

/// Registers used by a move: control registers (in symbol order) and the
/// active register.
std::vector<int> move_control_regs(Move move);
int move_target_reg(Move move);

/// Multi-controlled decomposition of one completed sector: 2*ell ladder
/// GCX on the auxiliary qudit bracketing centering GCX (crossing sectors),
/// V, the controlled diagonal, and V^dag.  Appends to `out` and returns
/// the GCX count of the fragment (2*ell + 2(m-1) for diagonal sectors).
int decompose_controlled(GateList& out, const GvcUnitary& u, int num_controls, const Truncation& trunc);

/// Same decomposition for two sectors of one move that differ only in the
/// last control value: the ladder prefix is shared, saving 2(ell-1) GCX.
int decompose_controlled_pair(GateList& out, const GvcUnitary& a, const GvcUnitary& b,
                              int num_controls, const Truncation& trunc);

/// Controlled diagonal exp(i tau diag(spectrum)) for an antisymmetric
/// spectrum (descending, length = target dimension): one CR_z per strictly
/// positive eigenvalue pairing level i with level d-1-i, no phase gate.
/// Returns the GCX count (2 * floor(m/2)).
int decompose_antisym_diag(GateList& out, const Eigen::VectorXd& spectrum, double tau, int control_reg,
                           int control_level, int target_reg);

/// One magnetic Trotter step as a gate list; scheme is baseline or reduced.
/// The emitted GCX count equals gcx_count(scheme, k) exactly.
GateList emit_trotter_step(const Truncation& trunc, const EvolutionParams& params, Scheme scheme);

/// The 48-GCX parity-computed qubit circuit (k = 1 only, no auxiliary use).
GateList emit_parity_circuit_k1(const EvolutionParams& params);

/// Closed-form GCX cost of one plaquette Trotter step.
long long gcx_count(Scheme scheme, const Truncation& trunc);

/// GCX totals with the per-component breakdown (F1,2 / F3 / G or box''').
struct ResourceReport {
    int k = 0;
    Scheme scheme = Scheme::reduced;
    long long gcx_total = 0;
    long long f12 = 0;
    long long f3 = 0;
    long long diag = 0;
};

ResourceReport resource_report(Scheme scheme, const Truncation& trunc);

} // namespace su2k
