#include "su2k/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace su2k {

namespace {

double round_to(double x, double quantum) { return std::round(x / quantum) * quantum; }

// lexicographic comparison of rounded eigenvector entries (1e-9 quantum)
bool vec_lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double ar = round_to(a[i].real(), 1e-9), br = round_to(b[i].real(), 1e-9);
        if (ar != br) return ar < br;
        const double ai = round_to(a[i].imag(), 1e-9), bi = round_to(b[i].imag(), 1e-9);
        if (ai != bi) return ai < bi;
    }
    return false;
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > best + 1e-12) {
            best = m;
            imax = i;
        }
    }
    const std::complex<double> z = v[imax];
    if (std::abs(z) > 0) v *= std::conj(z) / std::abs(z);
}

} // namespace

double max_abs(const Eigen::MatrixXcd& m) {
    double b = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) b = std::max(b, std::abs(m(i, j)));
    return b;
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
    Eigen::MatrixXcd r = m.adjoint() * m;
    r -= Eigen::MatrixXcd::Identity(m.cols(), m.cols());
    return max_abs(r) < tol;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    return max_abs(Eigen::MatrixXcd(m - m.adjoint())) < tol;
}

HermEig hermitian_eig(const Eigen::MatrixXcd& h, double herm_tol) {
    if (!is_hermitian(h, herm_tol)) throw std::runtime_error("hermitian_eig: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: solver failed");

    const Eigen::Index n = h.rows();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    Eigen::MatrixXcd vecs = es.eigenvectors();
    for (Eigen::Index i = 0; i < n; ++i) fix_phase(vecs.col(i));

    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double va = es.eigenvalues()[a], vb = es.eigenvalues()[b];
        if (std::abs(va - vb) > 1e-9) return va > vb; // descending
        return vec_lex_less(vecs.col(a), vecs.col(b));
    });

    HermEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[i] = es.eigenvalues()[order[i]];
        out.vectors.col(i) = vecs.col(order[i]);
    }
    return out;
}

UnitaryEig unitary_eig(const Eigen::MatrixXcd& u, double tol) {
    if (!is_unitary(u, 1e-10)) throw std::runtime_error("unitary_eig: matrix is not unitary");
    const Eigen::Index n = u.rows();

    // simultaneous eigenbasis of the commuting Hermitian pair (u+u^dag)/2, (u-u^dag)/2i
    const Eigen::MatrixXcd hc = 0.5 * (u + u.adjoint());
    const Eigen::MatrixXcd hs = std::complex<double>(0, -0.5) * (u - u.adjoint());

    HermEig ec = hermitian_eig(hc, 1e-9);
    Eigen::MatrixXcd basis = ec.vectors;

    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && std::abs(ec.values[stop] - ec.values[start]) < 1e-8) ++stop;
        if (stop - start > 1) {
            const Eigen::MatrixXcd sub = basis.middleCols(start, stop - start);
            HermEig es = hermitian_eig(Eigen::MatrixXcd(sub.adjoint() * hs * sub), 1e-8);
            basis.middleCols(start, stop - start) = sub * es.vectors;
        }
        start = stop;
    }

    UnitaryEig out;
    out.angles.resize(n);
    out.vectors.resize(n, n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    Eigen::VectorXd ang(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::complex<double> lam = basis.col(i).dot(u * basis.col(i)); // v^dag u v
        ang[i] = std::atan2(lam.imag(), lam.real());
        fix_phase(basis.col(i));
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::abs(ang[a] - ang[b]) > 1e-9) return ang[a] > ang[b];
        return vec_lex_less(basis.col(a), basis.col(b));
    });
    for (Eigen::Index i = 0; i < n; ++i) {
        out.angles[i] = ang[order[i]];
        out.vectors.col(i) = basis.col(order[i]);
    }

    Eigen::MatrixXcd check = out.vectors *
                             Eigen::VectorXcd(out.angles.unaryExpr([](double a) {
                                 return std::polar(1.0, a);
                             })).asDiagonal() *
                             out.vectors.adjoint();
    if (max_abs(Eigen::MatrixXcd(check - u)) > tol)
        throw std::runtime_error("unitary_eig: reconstruction check failed");
    return out;
}

void synthesize_local_unitary(GateList& out, int target, const std::vector<int>& levels,
                              const Eigen::MatrixXcd& u) {
    const int r = static_cast<int>(levels.size());
    if (u.rows() != r || u.cols() != r) throw std::invalid_argument("synthesize_local_unitary: shape mismatch");
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("synthesize_local_unitary: block not unitary");

    // zero the strict lower triangle with rotations on adjacent rows;
    // G_s ... G_1 u = D, so the circuit is D first, then the daggers in reverse
    Eigen::MatrixXcd w = u;
    std::vector<Gate> rots;
    for (int col = 0; col < r - 1; ++col) {
        for (int row = r - 1; row > col; --row) {
            const std::complex<double> a = w(row - 1, col), b = w(row, col);
            if (std::abs(b) < 1e-15) continue;
            const double rho = std::hypot(std::abs(a), std::abs(b));
            const std::complex<double> g00 = std::conj(a) / rho, g01 = std::conj(b) / rho;
            Eigen::Matrix2cd g;
            g << g00, g01, -std::conj(g01), std::conj(g00);
            w(Eigen::seqN(row - 1, 2), Eigen::all) = (g * w(Eigen::seqN(row - 1, 2), Eigen::all)).eval();
            rots.push_back(Gate::givens(target, levels[row - 1], levels[row],
                                        {g(0, 0), g(0, 1), g(1, 0), g(1, 1)}));
        }
    }

    const int dim = out.dims.at(target);
    std::vector<double> ph(dim, 0.0);
    bool any = false;
    for (int i = 0; i < r; ++i) {
        const double p = std::arg(w(i, i));
        ph[levels[i]] = p;
        if (std::abs(p) > 1e-15) any = true;
    }
    if (any) out.append(Gate::diag(target, std::move(ph)));
    for (auto it = rots.rbegin(); it != rots.rend(); ++it) out.append(it->dagger());
}

} // namespace su2k
