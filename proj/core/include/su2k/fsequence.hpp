#pragma once

#include <string>
#include <vector>

#include "su2k/synth.hpp"

namespace su2k {

/// Numerical verification of the phased F-move diagonalization: conjugates
/// the plaquette operator by the GVC-completed move unitaries and compares
/// against the closed reduction formulas after each step, restricted to
/// the physical subspace of the current lattice.  Guarded at k <= 3.
struct FSequenceReport {
    struct Entry {
        std::string check;
        int external_sector;
        double max_dev;
        bool pass;
    };
    std::vector<Entry> entries;
    double max_dev = 0.0;

    bool passed() const {
        for (const auto& e : entries)
            if (!e.pass) return false;
        return true;
    }
};

FSequenceReport verify_f_sequence(const Truncation& trunc, double tol = 1e-10);

} // namespace su2k
