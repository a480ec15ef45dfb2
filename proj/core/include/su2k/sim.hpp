#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "su2k/gatelist.hpp"
#include "su2k/gauge.hpp"
#include "su2k/plaquette.hpp"

namespace su2k {

/// Mixed-dimension qudit register layout; basis indices are row-major over
/// the declared order.
struct RegisterSpec {
    std::vector<int> dims;

    explicit RegisterSpec(std::vector<int> d) : dims(std::move(d)) {
        strides_.assign(dims.size(), 1);
        for (int r = static_cast<int>(dims.size()) - 2; r >= 0; --r)
            strides_[r] = strides_[r + 1] * dims[r + 1];
        total_ = dims.empty() ? 1 : strides_[0] * static_cast<long long>(dims[0]);
    }

    long long total() const { return total_; }
    long long stride(int r) const { return strides_[r]; }
    int digit(long long idx, int r) const { return static_cast<int>((idx / strides_[r]) % dims[r]); }

private:
    std::vector<long long> strides_;
    long long total_ = 1;
};

/// Exact linear action of one gate on a state vector.
void apply_gate(Eigen::VectorXcd& psi, const RegisterSpec& spec, const Gate& g);
void apply_gatelist(Eigen::VectorXcd& psi, const GateList& gl);

/// Ordered product of the whole list as a dense matrix; guarded by total
/// dimension (the k = 1 full space fits comfortably, k = 2 does not).
Eigen::MatrixXcd circuit_unitary(const GateList& gl, long long dense_guard = 8192);

/// Isometry onto the q-deformed physical subspace, columns in canonical
/// lexicographic order of enumerate_physical.
struct PhysicalProjector {
    explicit PhysicalProjector(const Truncation& trunc);

    const Truncation trunc;
    std::vector<LinkConfig> states;
    std::vector<long long> indices8; // basis index of each column in the 8-register space

    int count() const { return static_cast<int>(states.size()); }
};

/// exp(i tau Box) on the 8-register space, built by exact per-external-block
/// eigendecomposition (Box is verified Hermitian first).
class ReferenceEvolution {
public:
    ReferenceEvolution(const Truncation& trunc, double tau);

    /// Column of exp(i tau Box) for one 8-register basis state.
    Eigen::VectorXcd column(const LinkConfig& basis_state) const;

    const Truncation trunc;
    const double tau;

private:
    struct Block {
        Eigen::MatrixXcd evolution; // d^4 x d^4
    };
    std::vector<Block> blocks_; // indexed by external sector
    int d_;
    int block_index(const LinkConfig& c) const;
    int internal_index(const LinkConfig& c) const;
};

/// Result of running a circuit against the exact reference on the physical
/// subspace.  Aux failing to return to level 0 is its own failure class.
struct CompareResult {
    double max_deviation = 0.0;
    double aux_leakage = 0.0;
};

CompareResult compare_on_physical(const GateList& circuit, const Truncation& trunc, double tau);

} // namespace su2k
