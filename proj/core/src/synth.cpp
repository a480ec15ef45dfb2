#include "su2k/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "su2k/linalg.hpp"

namespace su2k {

namespace {

constexpr double kPi = std::numbers::pi;

bool sector_allows_source(Move move, const std::vector<int>& c2, int j, int k) {
    switch (move) {
        case Move::F1:
        case Move::F2: return admissible2(c2[0], c2[3], j, k) && admissible2(c2[1], c2[2], j, k);
        case Move::F3: return admissible2(c2[0], c2[2], j, k) && admissible2(c2[1], c2[2], j, k);
        case Move::G: return admissible2(j, j, c2[0], k);
    }
    return false;
}

bool sector_allows_target(Move move, const std::vector<int>& c2, int J, int k) {
    switch (move) {
        case Move::F1:
        case Move::F2: return admissible2(c2[0], c2[1], J, k) && admissible2(c2[3], c2[2], J, k);
        case Move::F3: return admissible2(c2[0], c2[1], J, k) && admissible2(c2[2], c2[2], J, k);
        case Move::G: return admissible2(J, J, c2[0], k);
    }
    return false;
}

ControlSector make_sector(Move move, std::vector<int> c2, const Truncation& trunc) {
    ControlSector s;
    s.move = move;
    s.controls2 = std::move(c2);
    for (int j = 0; j <= trunc.k; ++j)
        if (sector_allows_source(move, s.controls2, j, trunc.k)) s.sources.push_back(j);
    for (int J = 0; J <= trunc.k; ++J)
        if (sector_allows_target(move, s.controls2, J, trunc.k)) s.targets.push_back(J);
    return s;
}

// unmatched source/target levels under the canonical sorted pairing
void unmatched_pairs(const ControlSector& s, std::vector<int>& su, std::vector<int>& tu) {
    su.clear();
    tu.clear();
    std::set_difference(s.sources.begin(), s.sources.end(), s.targets.begin(), s.targets.end(),
                        std::back_inserter(su));
    std::set_difference(s.targets.begin(), s.targets.end(), s.sources.begin(), s.sources.end(),
                        std::back_inserter(tu));
}

} // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::nondeformed_reference: return "nondeformed";
        case Scheme::baseline: return "baseline";
        case Scheme::reduced: return "reduced";
        case Scheme::parity_k1: return "parity_k1";
    }
    return "?";
}

std::vector<int> move_control_regs(Move move) {
    switch (move) {
        case Move::F1: return {JLT, JLB, JAB, JAT};
        case Move::F2: return {JAT, JAB, JRB, JRT};
        case Move::F3: return {QL, QR, JAB};
        case Move::G: return {JAT};
    }
    return {};
}

int move_target_reg(Move move) {
    switch (move) {
        case Move::F1: return QL;
        case Move::F2: return QR;
        case Move::F3: return JAT;
        case Move::G: return JAB;
    }
    return -1;
}

std::optional<ControlSector> sector_at(Move move, const std::vector<int>& controls2,
                                       const Truncation& trunc) {
    const size_t want = (move == Move::F3) ? 3 : (move == Move::G) ? 1 : 4;
    if (controls2.size() != want) throw std::invalid_argument("sector_at: control count mismatch");
    ControlSector s = make_sector(move, controls2, trunc);
    if (s.sources.empty()) return std::nullopt;
    if (move == Move::G && s.m() < 2) return std::nullopt;
    if (s.sources.size() != s.targets.size())
        throw std::logic_error("sector_at: source/target counts differ");
    return s;
}

std::vector<ControlSector> control_sectors(Move move, const Truncation& trunc) {
    const int d = trunc.dim();
    std::vector<ControlSector> out;
    if (move == Move::G) {
        // integer sectors with at least one allowed transition (m >= 2)
        for (int J2 = 0; J2 <= trunc.k; J2 += 2) {
            ControlSector s = make_sector(move, {J2}, trunc);
            if (s.m() >= 2) out.push_back(std::move(s));
        }
        return out;
    }
    const int nctl = (move == Move::F3) ? 3 : 4;
    std::vector<int> c2(nctl, 0);
    while (true) {
        ControlSector s = make_sector(move, c2, trunc);
        if (!s.sources.empty()) {
            if (s.sources.size() != s.targets.size())
                throw std::logic_error("control_sectors: source/target counts differ");
            out.push_back(std::move(s));
        }
        int i = nctl - 1;
        while (i >= 0 && c2[i] == d - 1) c2[i--] = 0;
        if (i < 0) break;
        ++c2[i];
    }
    return out;
}

long long comb_c4(int p) {
    if (p <= 0) return 0;
    const long long poly = static_cast<long long>(p) * p * p - 3LL * p * p + 5LL * p - 3;
    if ((8 * poly) % 3 != 0) throw std::logic_error("comb_c4: non-integral");
    return (p == 1 ? 1 : 0) + 8 * poly / 3;
}

long long comb_c3(int p) {
    if (p <= 0) return 0;
    return (p == 1 ? -1 : 0) + 2LL * p * p - 4LL * p + 4;
}

long long level_distribution(int ell, int m, const Truncation& trunc) {
    const int k = trunc.k;
    if (m < 1) return 0;
    switch (ell) {
        case 4: return comb_c4(k + 3 - 2 * m);
        case 3: return comb_c3(k + 3 - 2 * m);
        case 1:
            if (k % 2 == 1) return (m >= 2 && m <= k + 1 && m % 2 == 0) ? 1 : 0;
            return (m >= 3 && m <= k + 1 && m % 2 == 1) ? 1 : 0;
    }
    throw std::invalid_argument("level_distribution: ell must be 1, 3 or 4");
}

long long sector_count(int ell, const Truncation& trunc) {
    const long long k = trunc.k;
    switch (ell) {
        case 4: return (3 + 8 * k + 8 * k * k + 4 * k * k * k + k * k * k * k) / 3;
        case 3: return (3 + 5 * k + 3 * k * k + k * k * k) / 3;
        case 1: return (k + 1) / 2;
    }
    throw std::invalid_argument("sector_count: ell must be 1, 3 or 4");
}

GvcUnitary gvc_complete(const ControlSector& sec, const Truncation& trunc) {
    if (sec.move == Move::G) throw std::invalid_argument("gvc_complete: G sectors are not GVC-completed");
    const int d = trunc.dim();
    GvcUnitary out;
    out.sector = sec;
    out.active_levels = sec.targets;

    auto amp = [&](int t, int s) { return phased_f_element(sec.move, sec.controls2, t, s, trunc); };

    if (!sec.crossing()) {
        out.matrix = Eigen::MatrixXcd::Identity(d, d);
        for (int t : sec.targets)
            for (int s : sec.sources) out.matrix(t, s) = amp(t, s);
    } else {
        std::vector<int> su, tu;
        unmatched_pairs(sec, su, tu);
        std::vector<int> perm(d);
        for (int i = 0; i < d; ++i) perm[i] = i;
        for (size_t i = 0; i < su.size(); ++i) std::swap(perm[su[i]], perm[tu[i]]);

        Eigen::MatrixXcd bfull = Eigen::MatrixXcd::Identity(d, d);
        for (int t : sec.targets)
            for (int s : sec.sources) bfull(t, perm[s]) = amp(t, s);
        out.matrix = Eigen::MatrixXcd::Zero(d, d);
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) out.matrix(x, y) = bfull(x, perm[y]);
        // single-transition sectors complete the swapped pair Hermitian
        if (sec.m() == 1) out.matrix(su[0], tu[0]) = std::conj(amp(tu[0], su[0]));
    }
    if (!is_unitary(out.matrix, 1e-12)) throw std::logic_error("gvc_complete: completion is not unitary");
    return out;
}

namespace {

void ladder(GateList& out, const std::vector<int>& regs, const std::vector<int>& levels, bool up) {
    const int ell = static_cast<int>(regs.size());
    if (up) {
        for (int i = 0; i < ell; ++i) out.append(Gate::gcx(regs[i], levels[i], AUX, i, i + 1));
    } else {
        for (int i = ell - 1; i >= 0; --i) out.append(Gate::gcx(regs[i], levels[i], AUX, i, i + 1));
    }
}

// controlled R_z(theta) on the target level pair (p, q): two GCX, two half rotations
void emit_crz(GateList& out, int creg, int clevel, int treg, int p, int q, double theta) {
    const int dt = out.dims.at(treg);
    std::vector<double> half(dt, 0.0), mhalf(dt, 0.0);
    half[p] = -theta / 4;
    half[q] = theta / 4;
    mhalf[p] = theta / 4;
    mhalf[q] = -theta / 4;
    out.append(Gate::diag(treg, half));
    out.append(Gate::gcx(creg, clevel, treg, p, q));
    out.append(Gate::diag(treg, mhalf));
    out.append(Gate::gcx(creg, clevel, treg, p, q));
}

// controlled diagonal over the level list: anchored CR_z chain plus a phase
// gate on the control; pad_to extends the chain with zero-angle rotations
int emit_controlled_sigma(GateList& out, int creg, int clevel, int treg, const std::vector<int>& levels,
                          const std::vector<double>& beta, int pad_to) {
    const int r = static_cast<int>(levels.size());
    double phi = 0.0;
    for (double b : beta) phi += b;
    phi /= r;
    int crz = 0;
    for (int i = 1; i < r; ++i, ++crz) emit_crz(out, creg, clevel, treg, levels[0], levels[i], 2 * (beta[i] - phi));
    if (pad_to > r - 1) {
        const int dt = out.dims.at(treg);
        for (int l = 0; l < dt && crz < pad_to; ++l) {
            if (l == levels[0]) continue;
            if (std::find(levels.begin(), levels.end(), l) != levels.end()) continue;
            emit_crz(out, creg, clevel, treg, levels[0], l, 0.0);
            ++crz;
        }
        if (crz != pad_to) throw std::logic_error("emit_controlled_sigma: cannot pad the chain");
    }
    if (std::abs(phi) > 1e-15) out.append(Gate::phase1(creg, clevel, phi));
    return crz;
}

// controlled W on a level subset: V, controlled Sigma, V^dag with V uncontrolled
int emit_controlled_block(GateList& out, int creg, int clevel, int treg, const std::vector<int>& levels,
                          const Eigen::MatrixXcd& w, int pad_to = -1) {
    UnitaryEig eig = unitary_eig(w);
    std::vector<double> beta(eig.angles.data(), eig.angles.data() + eig.angles.size());
    synthesize_local_unitary(out, treg, levels, eig.vectors.adjoint());
    const int crz = emit_controlled_sigma(out, creg, clevel, treg, levels, beta,
                                          pad_to < 0 ? static_cast<int>(levels.size()) - 1 : pad_to);
    synthesize_local_unitary(out, treg, levels, eig.vectors);
    return crz;
}

Eigen::MatrixXcd restrict_levels(const Eigen::MatrixXcd& u, const std::vector<int>& levels) {
    const int r = static_cast<int>(levels.size());
    Eigen::MatrixXcd w(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) w(i, j) = u(levels[i], levels[j]);
    return w;
}

std::vector<int> touched_levels(const ControlSector& s) {
    std::vector<int> t;
    std::set_union(s.sources.begin(), s.sources.end(), s.targets.begin(), s.targets.end(),
                   std::back_inserter(t));
    return t;
}

enum class Route { Skip, Phase, Diagonal, CrossSpec, CrossEig, CrossRefl };

struct SectorPlan {
    GvcUnitary u;
    Route route = Route::Skip;
};

int route_cost(const SectorPlan& p, int ell) {
    const int m = p.u.m();
    switch (p.route) {
        case Route::Skip: return 0;
        case Route::Phase: return 2 * ell;
        case Route::Diagonal: return 2 * ell + 2 * (m - 1);
        case Route::CrossSpec: {
            std::vector<int> su, tu;
            unmatched_pairs(p.u.sector, su, tu);
            return 2 * ell + static_cast<int>(su.size()) + 2 * (m - 1);
        }
        case Route::CrossEig: {
            const int r = static_cast<int>(touched_levels(p.u.sector).size());
            return 2 * ell + 2 * (r - 1);
        }
        case Route::CrossRefl: return 2 * ell + m + (m % 2);
    }
    return 0;
}

// disjoint source/target sets, and an idle level when the pair count must
// be rounded up
bool refl_applicable(const ControlSector& s, int d) {
    if (!s.crossing() || s.m() < 2) return false;
    std::vector<int> common;
    std::set_intersection(s.sources.begin(), s.sources.end(), s.targets.begin(), s.targets.end(),
                          std::back_inserter(common));
    if (!common.empty()) return false;
    return s.m() % 2 == 0 || d - 2 * s.m() >= 1;
}

// Controlled crossing block via the reflection completion [0 B^dag; B 0]:
// all nontrivial eigenphases equal -1, realized as paired CR_z(2 pi).
void emit_cross_reflection(GateList& out, const GvcUnitary& u, const Truncation& trunc) {
    const ControlSector& sec = u.sector;
    const int d = trunc.dim();
    const int m = u.m();
    const int treg = move_target_reg(sec.move);
    const int ell = static_cast<int>(sec.controls2.size());

    std::vector<int> levels = touched_levels(sec);
    int spare = -1;
    if (m % 2 == 1) {
        for (int l = 0; l < d && spare < 0; ++l)
            if (std::find(levels.begin(), levels.end(), l) == levels.end()) spare = l;
        levels.push_back(spare);
        std::sort(levels.begin(), levels.end());
    }
    const int r = static_cast<int>(levels.size());
    auto pos = [&](int level) {
        return static_cast<int>(std::find(levels.begin(), levels.end(), level) - levels.begin());
    };

    // eigenbasis rows: v_j = (x_j - y_j)/sqrt(2) at -1, w_j = (x_j + y_j)/sqrt(2) at +1
    Eigen::MatrixXcd vmat = Eigen::MatrixXcd::Zero(r, r);
    std::vector<int> minus_levels;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(r), y = Eigen::VectorXcd::Zero(r);
        y[pos(sec.sources[j])] = 1.0;
        for (int i = 0; i < m; ++i) x[pos(sec.targets[i])] = u.matrix(sec.targets[i], sec.sources[j]);
        vmat.row(pos(sec.targets[j])) = ((x - y) / std::sqrt(2.0)).adjoint();
        vmat.row(pos(sec.sources[j])) = ((x + y) / std::sqrt(2.0)).adjoint();
        minus_levels.push_back(sec.targets[j]);
    }
    if (spare >= 0) {
        vmat.row(pos(spare)) = Eigen::VectorXcd::Unit(r, pos(spare)).adjoint();
        minus_levels.push_back(spare);
    }
    if (!is_unitary(vmat, 1e-10)) throw std::logic_error("emit_cross_reflection: bad eigenbasis");

    synthesize_local_unitary(out, treg, levels, vmat);
    for (size_t i = 0; i + 1 < minus_levels.size(); i += 2)
        emit_crz(out, AUX, ell, treg, minus_levels[i], minus_levels[i + 1], 2 * kPi);
    synthesize_local_unitary(out, treg, levels, vmat.adjoint());
}

void emit_inner_reduced(GateList& out, const SectorPlan& plan, const Truncation& trunc) {
    const ControlSector& sec = plan.u.sector;
    const int ell = static_cast<int>(sec.controls2.size());
    const int treg = move_target_reg(sec.move);
    switch (plan.route) {
        case Route::Phase: {
            const double phi = std::arg(plan.u.matrix(sec.sources[0], sec.sources[0]));
            if (std::abs(phi) > 1e-15) out.append(Gate::phase1(AUX, ell, phi));
            break;
        }
        case Route::Diagonal:
            emit_controlled_block(out, AUX, ell, treg, plan.u.active_levels,
                                  restrict_levels(plan.u.matrix, plan.u.active_levels));
            break;
        case Route::CrossSpec: {
            std::vector<int> su, tu;
            unmatched_pairs(sec, su, tu);
            for (size_t i = 0; i < su.size(); ++i)
                out.append(Gate::gcx(AUX, ell, treg, su[i], tu[i]));
            if (plan.u.m() == 1) {
                const double phi = std::arg(plan.u.matrix(tu[0], su[0]));
                if (std::abs(phi) > 1e-15) out.append(Gate::phase1(AUX, ell, phi));
            } else {
                // B block of the centered unitary, on the target levels
                std::vector<int> perm(trunc.dim());
                for (int i = 0; i < trunc.dim(); ++i) perm[i] = i;
                for (size_t i = 0; i < su.size(); ++i) std::swap(perm[su[i]], perm[tu[i]]);
                const int m = plan.u.m();
                Eigen::MatrixXcd b(m, m);
                for (int r = 0; r < m; ++r)
                    for (int c = 0; c < m; ++c)
                        b(r, c) = plan.u.matrix(sec.targets[r], perm[sec.targets[c]]);
                emit_controlled_block(out, AUX, ell, treg, sec.targets, b);
            }
            break;
        }
        case Route::CrossEig: {
            const auto levels = touched_levels(sec);
            emit_controlled_block(out, AUX, ell, treg, levels, restrict_levels(plan.u.matrix, levels));
            break;
        }
        case Route::CrossRefl:
            emit_cross_reflection(out, plan.u, trunc);
            break;
        case Route::Skip:
            break;
    }
}

void emit_sector_reduced(GateList& out, const SectorPlan& plan, const Truncation& trunc) {
    if (plan.route == Route::Skip) return;
    const ControlSector& sec = plan.u.sector;
    const auto regs = move_control_regs(sec.move);
    ladder(out, regs, sec.controls2, true);
    emit_inner_reduced(out, plan, trunc);
    ladder(out, regs, sec.controls2, false);
}

// two sectors differing only in the last control share the ladder prefix
void emit_sector_pair_reduced(GateList& out, const SectorPlan& a, const SectorPlan& b,
                              const Truncation& trunc) {
    const auto regs = move_control_regs(a.u.sector.move);
    const int ell = static_cast<int>(regs.size());
    const std::vector<int> prefix_regs(regs.begin(), regs.end() - 1);
    const std::vector<int> prefix_vals(a.u.sector.controls2.begin(), a.u.sector.controls2.end() - 1);
    ladder(out, prefix_regs, prefix_vals, true);
    for (const SectorPlan* p : {&a, &b}) {
        out.append(Gate::gcx(regs[ell - 1], p->u.sector.controls2[ell - 1], AUX, ell - 1, ell));
        emit_inner_reduced(out, *p, trunc);
        out.append(Gate::gcx(regs[ell - 1], p->u.sector.controls2[ell - 1], AUX, ell - 1, ell));
    }
    ladder(out, prefix_regs, prefix_vals, false);
}

void emit_sector_baseline(GateList& out, const SectorPlan& plan, const Truncation& trunc) {
    const ControlSector& sec = plan.u.sector;
    const int ell = static_cast<int>(sec.controls2.size());
    const auto regs = move_control_regs(sec.move);
    const int treg = move_target_reg(sec.move);
    const auto levels = touched_levels(sec);
    ladder(out, regs, sec.controls2, true);
    emit_controlled_block(out, AUX, ell, treg, levels, restrict_levels(plan.u.matrix, levels),
                          trunc.dim() - 1);
    ladder(out, regs, sec.controls2, false);
}

void emit_dummy_pairs(GateList& out, const ControlSector& sec, int pairs) {
    const auto regs = move_control_regs(sec.move);
    for (int i = 0; i < pairs; ++i) {
        out.append(Gate::gcx(regs[0], sec.controls2[0], AUX, 3, 4));
        out.append(Gate::gcx(regs[0], sec.controls2[0], AUX, 3, 4));
    }
}

long long move_formula_share(Move move, const Truncation& trunc) {
    const int ell = (move == Move::F3) ? 3 : 4;
    long long total = 0;
    for (int m = 1; m <= (trunc.k + 2) / 2; ++m)
        total += level_distribution(ell, m, trunc) * (2 * ell + 2 * (m - 1));
    return total;
}

bool is_identity_matrix(const Eigen::MatrixXcd& m) {
    return max_abs(Eigen::MatrixXcd(m - Eigen::MatrixXcd::Identity(m.rows(), m.cols()))) < 1e-13;
}

bool is_uniform_phase_block(const GvcUnitary& u) {
    if (u.sector.crossing()) return false;
    const auto& lv = u.active_levels;
    const std::complex<double> a = u.matrix(lv[0], lv[0]);
    for (int t : lv)
        for (int s : lv)
            if (std::abs(u.matrix(t, s) - (t == s ? a : std::complex<double>(0, 0))) > 1e-13) return false;
    return true;
}

} // namespace

namespace {

SectorPlan standalone_plan(const GvcUnitary& u) {
    SectorPlan plan;
    plan.u = u;
    if (!u.sector.crossing())
        plan.route = is_uniform_phase_block(u) ? Route::Phase : Route::Diagonal;
    else
        plan.route = (u.m() == 1) ? Route::CrossEig : Route::CrossSpec;
    return plan;
}

} // namespace

int decompose_controlled(GateList& out, const GvcUnitary& u, int num_controls, const Truncation& trunc) {
    if (num_controls != static_cast<int>(u.sector.controls2.size()))
        throw std::invalid_argument("decompose_controlled: control count mismatch");
    if (static_cast<int>(out.dims.size()) != 9 || out.dims[AUX] < num_controls + 1)
        throw std::invalid_argument("decompose_controlled: auxiliary register too small");
    const int before = out.gcx_count();
    emit_sector_reduced(out, standalone_plan(u), trunc);
    return out.gcx_count() - before;
}

int decompose_controlled_pair(GateList& out, const GvcUnitary& a, const GvcUnitary& b,
                              int num_controls, const Truncation& trunc) {
    if (a.sector.move != b.sector.move)
        throw std::invalid_argument("decompose_controlled_pair: moves differ");
    if (num_controls != static_cast<int>(a.sector.controls2.size()))
        throw std::invalid_argument("decompose_controlled_pair: control count mismatch");
    if (!std::equal(a.sector.controls2.begin(), a.sector.controls2.end() - 1,
                    b.sector.controls2.begin()))
        throw std::invalid_argument("decompose_controlled_pair: control prefixes differ");
    const int before = out.gcx_count();
    emit_sector_pair_reduced(out, standalone_plan(a), standalone_plan(b), trunc);
    return out.gcx_count() - before;
}

int decompose_antisym_diag(GateList& out, const Eigen::VectorXd& spectrum, double tau, int control_reg,
                           int control_level, int target_reg) {
    const int d = static_cast<int>(spectrum.size());
    if (d != out.dims.at(target_reg))
        throw std::invalid_argument("decompose_antisym_diag: spectrum length mismatch");
    for (int i = 0; i < d; ++i)
        if (std::abs(spectrum[i] + spectrum[d - 1 - i]) > 1e-10)
            throw std::invalid_argument("decompose_antisym_diag: spectrum is not antisymmetric");
    const int before = out.gcx_count();
    for (int i = 0; i < d / 2; ++i) {
        if (spectrum[i] <= 1e-12) break; // descending; remaining pairs idle
        emit_crz(out, control_reg, control_level, target_reg, i, d - 1 - i, -2 * tau * spectrum[i]);
    }
    return out.gcx_count() - before;
}

namespace {

void emit_box_evolution(GateList& out, const Truncation& trunc, double tau, Scheme scheme) {
    const int d = trunc.dim();
    for (const ControlSector& sec : control_sectors(Move::G, trunc)) {
        const int J2 = sec.controls2[0];
        const GMove gm = g_move(J2, trunc);
        std::vector<int> all_levels(d);
        for (int i = 0; i < d; ++i) all_levels[i] = i;
        if (scheme == Scheme::reduced) {
            synthesize_local_unitary(out, JAB, all_levels, gm.g);
            const int expect = (trunc.k + 1 - J2) / 2;
            const int crz = decompose_antisym_diag(out, gm.spectrum, tau, JAT, J2, JAB) / 2;
            if (crz != expect) throw std::logic_error("emit_box_evolution: rotation count mismatch");
            synthesize_local_unitary(out, JAB, all_levels, gm.g.adjoint());
        } else {
            // baseline: G controlled as well, via its eigenphases
            GateList cg = out;
            cg.gates.clear();
            emit_controlled_block(cg, JAT, J2, JAB, all_levels, gm.g, d - 1);
            out.append(cg);
            std::vector<double> beta(d);
            for (int i = 0; i < d; ++i) beta[i] = tau * gm.spectrum[i];
            emit_controlled_sigma(out, JAT, J2, JAB, all_levels, beta, d - 1);
            out.append_dagger(cg);
        }
    }
}

} // namespace

GateList emit_trotter_step(const Truncation& trunc, const EvolutionParams& params, Scheme scheme) {
    params.validate();
    if (scheme == Scheme::parity_k1) return emit_parity_circuit_k1(params);
    if (scheme != Scheme::baseline && scheme != Scheme::reduced)
        throw std::invalid_argument("emit_trotter_step: emission requires baseline or reduced");
    if (trunc.k < 1) throw std::invalid_argument("emit_trotter_step: k must be >= 1");

    GateList fwd = GateList::for_truncation(trunc.k);
    long long fwd_formula = 0;
    std::vector<SectorPlan> plans;
    std::vector<Move> moves = {Move::F1, Move::F2, Move::F3};

    for (Move mv : moves) {
        fwd_formula += move_formula_share(mv, trunc);
        for (const ControlSector& sec : control_sectors(mv, trunc)) {
            SectorPlan p;
            p.u = gvc_complete(sec, trunc);
            if (scheme == Scheme::baseline) {
                p.route = Route::Diagonal; // uniform full-depth treatment
                plans.push_back(std::move(p));
                continue;
            }
            if (!sec.crossing()) {
                if (is_identity_matrix(p.u.matrix))
                    p.route = Route::Skip;
                else if (p.u.m() == 1 || is_uniform_phase_block(p.u))
                    p.route = Route::Phase;
                else
                    p.route = Route::Diagonal;
            } else {
                p.route = refl_applicable(sec, trunc.dim()) ? Route::CrossRefl : Route::CrossSpec;
            }
            plans.push_back(std::move(p));
        }
    }

    if (scheme == Scheme::baseline) {
        for (const SectorPlan& p : plans) emit_sector_baseline(fwd, p, trunc);
    } else {
        long long exact = 0;
        for (const SectorPlan& p : plans) {
            const int ell = static_cast<int>(p.u.sector.controls2.size());
            exact += route_cost(p, ell);
        }
        long long slack = fwd_formula - exact;

        // adjacent sectors differing only in the last control can share the
        // ladder prefix, recovering 2(ell-1) GCX each time the construction
        // would otherwise exceed the closed-form budget
        enum { Single = 0, PairHead = 1, PairTail = 2 };
        std::vector<int> grouping(plans.size(), Single);
        for (size_t i = 0; i + 1 < plans.size() && slack < 0; ++i) {
            if (grouping[i] != Single || grouping[i + 1] != Single) continue;
            const ControlSector& x = plans[i].u.sector;
            const ControlSector& y = plans[i + 1].u.sector;
            if (x.move != y.move) continue;
            if (plans[i].route == Route::Skip || plans[i + 1].route == Route::Skip) continue;
            if (!std::equal(x.controls2.begin(), x.controls2.end() - 1, y.controls2.begin())) continue;
            grouping[i] = PairHead;
            grouping[i + 1] = PairTail;
            slack += 2 * (static_cast<long long>(x.controls2.size()) - 1);
            ++i;
        }
        if (slack % 2 != 0) {
            // shift one crossing sector to the eigendecomposition route
            bool fixed = false;
            for (SectorPlan& p : plans) {
                if (p.route != Route::CrossSpec) continue;
                const int ell = static_cast<int>(p.u.sector.controls2.size());
                const int delta = route_cost({p.u, Route::CrossEig}, ell) - route_cost(p, ell);
                if (delta % 2 != 0) {
                    p.route = Route::CrossEig;
                    slack -= delta;
                    fixed = true;
                    break;
                }
            }
            if (!fixed) throw std::logic_error("emit_trotter_step: cannot fix GCX count parity");
        }
        if (slack < 0) throw std::logic_error("emit_trotter_step: construction exceeds the closed-form count");
        int last_skip = -1;
        for (size_t i = 0; i < plans.size(); ++i)
            if (plans[i].route == Route::Skip) last_skip = static_cast<int>(i);
        for (size_t i = 0; i < plans.size(); ++i) {
            if (grouping[i] == PairTail) continue;
            if (grouping[i] == PairHead)
                emit_sector_pair_reduced(fwd, plans[i], plans[i + 1], trunc);
            else
                emit_sector_reduced(fwd, plans[i], trunc);
            if (static_cast<int>(i) == last_skip && slack > 0) {
                emit_dummy_pairs(fwd, plans[i].u.sector, static_cast<int>(slack / 2));
                slack = 0;
            }
        }
        if (slack > 0) {
            // no identity sector available; pad at the end of the F stream
            emit_dummy_pairs(fwd, plans.back().u.sector, static_cast<int>(slack / 2));
        }
    }

    GateList gl = GateList::for_truncation(trunc.k);
    gl.append(fwd);
    emit_box_evolution(gl, trunc, params.tau, scheme);
    gl.append_dagger(fwd);

    const long long expect = gcx_count(scheme, trunc);
    if (gl.gcx_count() != expect)
        throw std::logic_error("emit_trotter_step: emitted GCX count " + std::to_string(gl.gcx_count()) +
                               " != closed form " + std::to_string(expect));
    return gl;
}

namespace {

void emit_x(GateList& out, int reg) {
    out.append(Gate::givens(reg, 0, 1, {std::complex<double>(0), 1, 1, std::complex<double>(0)}));
}

void emit_cnot(GateList& out, int c, int t) { out.append(Gate::gcx(c, 1, t, 0, 1)); }

// 6-CNOT CCZ: phase -1 exactly when all three qubits are 1
void emit_ccz(GateList& out, int a, int b, int c) {
    auto t = [&](int r, double s) { out.append(Gate::phase1(r, 1, s * kPi / 4)); };
    emit_cnot(out, b, c);
    t(c, -1);
    emit_cnot(out, a, c);
    t(c, 1);
    emit_cnot(out, b, c);
    t(c, -1);
    emit_cnot(out, a, c);
    t(c, 1);
    t(b, 1);
    emit_cnot(out, a, b);
    t(b, -1);
    emit_cnot(out, a, b);
    t(a, 1);
}

// phase -1 exactly on (ra = va, rb = vb, rc = vc)
void emit_cc_minus_z(GateList& out, int ra, int va, int rb, int vb, int rc, int vc) {
    if (!va) emit_x(out, ra);
    if (!vb) emit_x(out, rb);
    if (!vc) emit_x(out, rc);
    emit_ccz(out, ra, rb, rc);
    if (!va) emit_x(out, ra);
    if (!vb) emit_x(out, rb);
    if (!vc) emit_x(out, rc);
}

} // namespace

GateList emit_parity_circuit_k1(const EvolutionParams& params) {
    params.validate();
    const Truncation trunc(1);
    GateList gl = GateList::for_truncation(1);
    GateList fwd = GateList::for_truncation(1);

    // U_F2 U_F1 via parities: p1a = j_l^b + j_a^t, p1b = j_a^b + j_r^t,
    // shared -Z parity p1a + p1b
    emit_cnot(fwd, JAT, JLB);
    emit_cnot(fwd, JAB, JRT);
    emit_cnot(fwd, JLB, QL); // CR_x(-pi) = (S (x) I) CNOT
    fwd.append(Gate::phase1(JLB, 1, kPi / 2));
    emit_cnot(fwd, JRT, QR);
    fwd.append(Gate::phase1(JRT, 1, kPi / 2));
    emit_cnot(fwd, JLB, JRT);
    emit_cc_minus_z(fwd, JRT, 1, JAT, 0, JAB, 0);
    emit_cnot(fwd, JLB, JRT);
    emit_cnot(fwd, JAB, JRT);
    emit_cnot(fwd, JAT, JLB);

    // U_F3 via the parity q_l + j_a^b
    emit_cnot(fwd, QL, JAB);
    fwd.append(Gate::phase1(JAT, 1, -kPi / 2)); // CY = (I (x) S) CNOT (I (x) S^dag)
    emit_cnot(fwd, JAB, JAT);
    fwd.append(Gate::phase1(JAT, 1, kPi / 2));
    emit_cc_minus_z(fwd, JAB, 0, QL, 0, JAT, 0);
    emit_cnot(fwd, QL, JAB);

    gl.append(fwd);
    emit_box_evolution(gl, trunc, params.tau, Scheme::reduced);
    gl.append_dagger(fwd);

    if (gl.gcx_count() != 48)
        throw std::logic_error("emit_parity_circuit_k1: GCX count " + std::to_string(gl.gcx_count()) + " != 48");
    return gl;
}

long long gcx_count(Scheme scheme, const Truncation& trunc) {
    const long long k = trunc.k;
    switch (scheme) {
        case Scheme::nondeformed_reference: {
            const long long d4 = (k + 1) * (k + 1) * (k + 1) * (k + 1);
            return k * k * k * k * (2 * d4 + 30);
        }
        case Scheme::baseline:
            return 4 * (8 + 2 * k) * sector_count(4, trunc) + 2 * (6 + 2 * k) * sector_count(3, trunc) +
                   6 * k * sector_count(1, trunc);
        case Scheme::reduced: {
            long long total = 0;
            for (int m = 1; m <= (trunc.k + 2) / 2; ++m) {
                total += 4 * (8 + 2 * (m - 1)) * level_distribution(4, m, trunc);
                total += 2 * (6 + 2 * (m - 1)) * level_distribution(3, m, trunc);
            }
            for (int m = 2; m <= trunc.k + 1; ++m)
                total += 2 * (m / 2) * level_distribution(1, m, trunc);
            return total;
        }
        case Scheme::parity_k1:
            if (trunc.k != 1) throw std::invalid_argument("gcx_count: parity scheme is k = 1 only");
            return 48;
    }
    throw std::logic_error("gcx_count: bad scheme");
}

ResourceReport resource_report(Scheme scheme, const Truncation& trunc) {
    ResourceReport r;
    r.k = trunc.k;
    r.scheme = scheme;
    const long long k = trunc.k;
    switch (scheme) {
        case Scheme::baseline:
            r.f12 = 4 * (8 + 2 * k) * sector_count(4, trunc);
            r.f3 = 2 * (6 + 2 * k) * sector_count(3, trunc);
            r.diag = 6 * k * sector_count(1, trunc);
            break;
        case Scheme::reduced:
            for (int m = 1; m <= (trunc.k + 2) / 2; ++m) {
                r.f12 += 4 * (8 + 2 * (m - 1)) * level_distribution(4, m, trunc);
                r.f3 += 2 * (6 + 2 * (m - 1)) * level_distribution(3, m, trunc);
            }
            for (int m = 2; m <= trunc.k + 1; ++m) r.diag += 2 * (m / 2) * level_distribution(1, m, trunc);
            break;
        default:
            break;
    }
    r.gcx_total = gcx_count(scheme, trunc);
    if ((scheme == Scheme::baseline || scheme == Scheme::reduced) &&
        r.f12 + r.f3 + r.diag != r.gcx_total)
        throw std::logic_error("resource_report: component sum mismatch");
    return r;
}

} // namespace su2k
