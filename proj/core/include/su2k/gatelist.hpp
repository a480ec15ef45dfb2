#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace su2k {

/// Elementary qudit gate.  GCX is the only entangling element; everything
/// else is single-qudit.  LOCALU is an in-memory convenience only and is
/// lowered to GIVENS + DIAG before serialization.
struct Gate {
    enum class Kind { GCX, GIVENS, DIAG, PHASE1, LOCALU };

    Kind kind;
    int target = -1;

    // GCX
    int control = -1;
    int control_level = -1;
    int l0 = -1, l1 = -1; // swapped / rotated level pair (also GIVENS)

    // GIVENS: 2x2 unitary block on (l0, l1), row-major
    std::array<std::complex<double>, 4> u2{};

    // DIAG: phase angle per level of the target register
    std::vector<double> phases;

    // PHASE1
    int level = -1;
    double phase = 0.0;

    // LOCALU: dense unitary on a level subset
    std::vector<int> levels;
    Eigen::MatrixXcd block;

    static Gate gcx(int c, int cl, int t, int a, int b);
    static Gate givens(int t, int a, int b, const std::array<std::complex<double>, 4>& u);
    static Gate diag(int t, std::vector<double> phases);
    static Gate phase1(int t, int level, double phase);
    static Gate localu(int t, std::vector<int> levels, Eigen::MatrixXcd block);

    Gate dagger() const;
};

/// Ordered gate sequence over the fixed register layout: eight system
/// registers of dimension d followed by one auxiliary register of
/// dimension 5.  Gates apply left to right.
struct GateList {
    std::vector<int> dims;
    std::vector<Gate> gates;

    static GateList for_truncation(int k);

    long long total_dim() const;
    int gcx_count() const;

    void append(Gate g);
    void append(const GateList& other);
    void append_dagger(const GateList& other);
};

/// Bit-exact text serialization (QDEFCIRC 1).  Floating-point fields are
/// printed with 17 significant digits so parse(emit(x)) == x.
std::string to_text(const GateList& gl);

/// Strict parser: unknown directives, malformed fields, or out-of-range
/// level/register indices throw.  '#' starts a comment.
GateList parse_text(const std::string& text);

} // namespace su2k
