#include "su2k/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "su2k/linalg.hpp"

namespace su2k {

namespace {

// Visit every basis index whose digit on register r equals `level`,
// paired with the index differing only by level -> level2.
template <typename F>
void for_level_pairs(const RegisterSpec& spec, int r, int level, int level2, F&& f) {
    const long long n = spec.total();
    const long long s = spec.stride(r);
    const int dr = spec.dims[r];
    const long long shift = (level2 - level) * s;
    for (long long base = 0; base < n; base += s * dr) {
        const long long lo = base + level * s;
        for (long long i = lo; i < lo + s; ++i) f(i, i + shift);
    }
}

} // namespace

void apply_gate(Eigen::VectorXcd& psi, const RegisterSpec& spec, const Gate& g) {
    switch (g.kind) {
        case Gate::Kind::GCX: {
            if (g.control == g.target) throw std::invalid_argument("apply_gate: control equals target");
            const long long sc = spec.stride(g.control);
            const int dc = spec.dims[g.control];
            for_level_pairs(spec, g.target, g.l0, g.l1, [&](long long i, long long j) {
                if (static_cast<int>((i / sc) % dc) == g.control_level) std::swap(psi[i], psi[j]);
            });
            break;
        }
        case Gate::Kind::GIVENS: {
            const std::complex<double> u00 = g.u2[0], u01 = g.u2[1], u10 = g.u2[2], u11 = g.u2[3];
            for_level_pairs(spec, g.target, g.l0, g.l1, [&](long long i, long long j) {
                const std::complex<double> a = psi[i], b = psi[j];
                psi[i] = u00 * a + u01 * b;
                psi[j] = u10 * a + u11 * b;
            });
            break;
        }
        case Gate::Kind::DIAG: {
            const long long s = spec.stride(g.target);
            const int dt = spec.dims[g.target];
            std::vector<std::complex<double>> ph(dt);
            for (int l = 0; l < dt; ++l) ph[l] = std::polar(1.0, g.phases[l]);
            const long long n = spec.total();
            for (long long base = 0; base < n; base += s * dt)
                for (int l = 0; l < dt; ++l) {
                    if (g.phases[l] == 0.0) continue;
                    const long long lo = base + l * s;
                    for (long long i = lo; i < lo + s; ++i) psi[i] *= ph[l];
                }
            break;
        }
        case Gate::Kind::PHASE1: {
            const std::complex<double> ph = std::polar(1.0, g.phase);
            const long long s = spec.stride(g.target);
            const int dt = spec.dims[g.target];
            const long long n = spec.total();
            for (long long base = 0; base < n; base += s * dt) {
                const long long lo = base + g.level * s;
                for (long long i = lo; i < lo + s; ++i) psi[i] *= ph;
            }
            break;
        }
        case Gate::Kind::LOCALU: {
            const int m = static_cast<int>(g.levels.size());
            const long long s = spec.stride(g.target);
            const int dt = spec.dims[g.target];
            const long long n = spec.total();
            Eigen::VectorXcd tmp(m);
            for (long long base = 0; base < n; base += s * dt)
                for (long long off = base; off < base + s; ++off) {
                    for (int a = 0; a < m; ++a) tmp[a] = psi[off + g.levels[a] * s];
                    tmp = (g.block * tmp).eval();
                    for (int a = 0; a < m; ++a) psi[off + g.levels[a] * s] = tmp[a];
                }
            break;
        }
    }
}

void apply_gatelist(Eigen::VectorXcd& psi, const GateList& gl) {
    const RegisterSpec spec(gl.dims);
    if (psi.size() != spec.total()) throw std::invalid_argument("apply_gatelist: state size mismatch");
    for (const Gate& g : gl.gates) apply_gate(psi, spec, g);
}

Eigen::MatrixXcd circuit_unitary(const GateList& gl, long long dense_guard) {
    const RegisterSpec spec(gl.dims);
    const long long n = spec.total();
    if (n > dense_guard)
        throw std::invalid_argument("circuit_unitary: total dimension " + std::to_string(n) +
                                    " exceeds the dense guard " + std::to_string(dense_guard));
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    Eigen::VectorXcd col(n);
    for (long long c = 0; c < n; ++c) {
        col = u.col(c);
        for (const Gate& g : gl.gates) apply_gate(col, spec, g);
        u.col(c) = col;
    }
    if (!is_unitary(u, 1e-10)) throw std::logic_error("circuit_unitary: unitarity check failed");
    return u;
}

PhysicalProjector::PhysicalProjector(const Truncation& t)
    : trunc(t), states(enumerate_physical(t, true)) {
    const int d = trunc.dim();
    indices8.reserve(states.size());
    for (const LinkConfig& c : states) {
        long long idx = 0;
        for (int r = 0; r < 8; ++r) idx = idx * d + c[r];
        indices8.push_back(idx);
    }
}

ReferenceEvolution::ReferenceEvolution(const Truncation& t, double tau_)
    : trunc(t), tau(tau_), d_(t.dim()) {
    if (t.k > 2) throw std::invalid_argument("ReferenceEvolution: dense reference guarded at k <= 2");
    const int d = d_;
    const int nblocks = d * d * d * d;
    blocks_.resize(nblocks);
    for (int e = 0; e < nblocks; ++e) {
        int x = e;
        std::array<int, 4> ext2{};
        ext2[3] = x % d; x /= d; // j_r^b
        ext2[2] = x % d; x /= d; // j_r^t
        ext2[1] = x % d; x /= d; // j_l^b
        ext2[0] = x;             // j_l^t
        const Eigen::MatrixXcd box = plaquette_block(ext2, trunc);
        HermEig eig = hermitian_eig(box, 1e-10);
        Eigen::VectorXcd ph(eig.values.size());
        for (Eigen::Index i = 0; i < eig.values.size(); ++i) ph[i] = std::polar(1.0, tau * eig.values[i]);
        blocks_[e].evolution = eig.vectors * ph.asDiagonal() * eig.vectors.adjoint();
    }
}

int ReferenceEvolution::block_index(const LinkConfig& c) const {
    return ((c[JLT] * d_ + c[JLB]) * d_ + c[JRT]) * d_ + c[JRB];
}

int ReferenceEvolution::internal_index(const LinkConfig& c) const {
    return ((c[QL] * d_ + c[JAT]) * d_ + c[JAB]) * d_ + c[QR];
}

Eigen::VectorXcd ReferenceEvolution::column(const LinkConfig& basis_state) const {
    const int d = d_;
    long long n8 = 1;
    for (int i = 0; i < 8; ++i) n8 *= d;
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n8);
    const Block& blk = blocks_[block_index(basis_state)];
    const Eigen::VectorXcd col = blk.evolution.col(internal_index(basis_state));
    // scatter the internal block column back into the 8-register indexing
    LinkConfig c = basis_state;
    int i = 0;
    for (int ql = 0; ql < d; ++ql)
        for (int jat = 0; jat < d; ++jat)
            for (int jab = 0; jab < d; ++jab)
                for (int qr = 0; qr < d; ++qr, ++i) {
                    c[QL] = ql; c[JAT] = jat; c[JAB] = jab; c[QR] = qr;
                    long long idx = 0;
                    for (int r = 0; r < 8; ++r) idx = idx * d + c[r];
                    out[idx] = col[i];
                }
    return out;
}

CompareResult compare_on_physical(const GateList& circuit, const Truncation& trunc, double tau) {
    const RegisterSpec spec(circuit.dims);
    const PhysicalProjector proj(trunc);
    const ReferenceEvolution ref(trunc, tau);
    const long long naux = 5;
    if (circuit.dims.size() != 9 || circuit.dims[8] != 5)
        throw std::invalid_argument("compare_on_physical: expected 8 system registers plus a dim-5 aux");

    CompareResult res;
    Eigen::VectorXcd psi(spec.total());
    for (int s = 0; s < proj.count(); ++s) {
        psi.setZero();
        psi[proj.indices8[s] * naux] = 1.0; // aux starts in level 0
        for (const Gate& g : circuit.gates) apply_gate(psi, spec, g);

        const Eigen::VectorXcd refcol = ref.column(proj.states[s]);

        double dev2 = 0.0, leak2 = 0.0;
        // leakage: population outside aux level 0
        for (long long i = 0; i < spec.total(); ++i)
            if (i % naux != 0) leak2 += std::norm(psi[i]);
        // deviation on the physical rows at aux level 0
        for (int r = 0; r < proj.count(); ++r) {
            const std::complex<double> a = psi[proj.indices8[r] * naux];
            dev2 += std::norm(a - refcol[proj.indices8[r]]);
        }
        res.max_deviation = std::max(res.max_deviation, std::sqrt(dev2));
        res.aux_leakage = std::max(res.aux_leakage, std::sqrt(leak2));
    }
    return res;
}

} // namespace su2k
