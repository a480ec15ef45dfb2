#include <doctest.h>

#include <cmath>
#include <complex>

#include "su2k/fsequence.hpp"
#include "su2k/linalg.hpp"
#include "su2k/plaquette.hpp"
#include "su2k/sim.hpp"
#include "su2k/synth.hpp"

using namespace su2k;
using Cx = std::complex<double>;

TEST_CASE("plaquette elements") {
    Truncation t1(1);
    LinkConfig z{};
    // every active link is forced to a delta j = 1/2 transition
    CHECK(plaquette_element(z, z, t1) == 0.0);

    LinkConfig a = z, b = z;
    a[JLT] = 1; // external mismatch
    CHECK(plaquette_element(a, b, t1) == 0.0);

    // doubled phase exponent is even on every nonzero element
    for (int k = 1; k <= 2; ++k) {
        Truncation t(k);
        const auto states = enumerate_physical(t, true);
        for (const auto& bra : states)
            for (const auto& ket : states) {
                const double v = plaquette_element(bra, ket, t);
                if (v != 0.0) {
                    const int e2 = -(bra[JAT] - ket[JAT]) - (bra[JAB] - ket[JAB]) +
                                   (bra[QL] - ket[QL]) + (bra[QR] - ket[QR]);
                    CHECK(e2 % 2 == 0);
                }
            }
    }
}

TEST_CASE("plaquette matrix structure at k = 1") {
    Truncation t1(1);
    const Eigen::MatrixXcd box = plaquette_matrix(t1);
    CHECK(box.rows() == 256);
    CHECK(is_hermitian(box, 1e-12));

    // nonzeros only between physical states: the operator equals its
    // projector-sandwiched form
    const PhysicalProjector proj(t1);
    Eigen::MatrixXcd sandwich = Eigen::MatrixXcd::Zero(256, 256);
    for (int r = 0; r < proj.count(); ++r)
        for (int c = 0; c < proj.count(); ++c)
            sandwich(proj.indices8[r], proj.indices8[c]) = box(proj.indices8[r], proj.indices8[c]);
    CHECK(max_abs(Eigen::MatrixXcd(box - sandwich)) < 1e-13);

    // physical 16x16 block: all transformed states live in the J_a^t = 0
    // sector, whose box''' eigenvalues are +-1, each eight-fold here
    Eigen::MatrixXcd phys(16, 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) phys(r, c) = box(proj.indices8[r], proj.indices8[c]);
    HermEig eig = hermitian_eig(phys);
    const GMove gm = g_move(0, t1);
    for (int i = 0; i < 8; ++i) {
        CHECK(eig.values[i] == doctest::Approx(gm.spectrum[0]).epsilon(1e-12));
        CHECK(eig.values[8 + i] == doctest::Approx(gm.spectrum[1]).epsilon(1e-12));
    }
}

TEST_CASE("k = 0 has empty dynamics") {
    Truncation t0(0);
    const Eigen::MatrixXcd box = plaquette_matrix(t0);
    CHECK(box.rows() == 1);
    CHECK(std::abs(box(0, 0)) == 0.0);
}

TEST_CASE("phased F-move fixtures from the qubit and qutrit tables") {
    Truncation t1(1), t2(2), t3(3);

    CHECK(std::abs(phased_f_element(Move::F1, {0, 0, 1, 1}, 0, 1, t1) - Cx(0, -1)) < 1e-14);
    CHECK(std::abs(phased_f_element(Move::F1, {0, 1, 0, 1}, 1, 1, t1) - Cx(-1, 0)) < 1e-14);
    CHECK(phased_f_element(Move::F1, {1, 1, 1, 1}, 0, 0, t1).real() == doctest::Approx(-1.0));

    // qutrit {1,1,1,1}: amplitudes (-1)^(jJ+1)/sqrt(2) on levels {0, 2}
    const double s2 = 1.0 / std::sqrt(2.0);
    CHECK(phased_f_element(Move::F1, {1, 1, 1, 1}, 0, 0, t2).real() == doctest::Approx(-s2));
    CHECK(phased_f_element(Move::F1, {1, 1, 1, 1}, 0, 2, t2).real() == doctest::Approx(-s2));
    CHECK(phased_f_element(Move::F1, {1, 1, 1, 1}, 2, 0, t2).real() == doctest::Approx(-s2));
    CHECK(phased_f_element(Move::F1, {1, 1, 1, 1}, 2, 2, t2).real() == doctest::Approx(s2));

    // k = 3 control sector {1, 1/2, 1, 1/2}: golden-ratio block
    const double a = (std::sqrt(5.0) - 1.0) / 2.0;
    const double b = std::pow((3.0 - std::sqrt(5.0)) / 2.0, 0.25);
    CHECK(phased_f_element(Move::F1, {2, 1, 2, 1}, 1, 1, t3).real() == doctest::Approx(a));
    CHECK(phased_f_element(Move::F1, {2, 1, 2, 1}, 3, 3, t3).real() == doctest::Approx(-a));
    CHECK(std::abs(phased_f_element(Move::F1, {2, 1, 2, 1}, 1, 3, t3)) == doctest::Approx(b));

    // F3 qubit rows
    CHECK(std::abs(phased_f_element(Move::F3, {1, 1, 0}, 0, 1, t1) - Cx(0, 1)) < 1e-14);
    CHECK(phased_f_element(Move::F3, {1, 1, 1}, 0, 0, t1).real() == doctest::Approx(-1.0));
}

TEST_CASE("box''' sector matrices") {
    Truncation t1(1), t2(2);
    const Eigen::MatrixXcd b1 = box_triple_prime(0, t1);
    CHECK(std::abs(b1(0, 1) - Cx(0, 1)) < 1e-14);
    CHECK(std::abs(b1(1, 0) - Cx(0, -1)) < 1e-14);
    CHECK(std::abs(b1(0, 0)) < 1e-14);

    const Eigen::MatrixXcd b2 = box_triple_prime(0, t2);
    CHECK(std::abs(b2(0, 1) - Cx(0, 1)) < 1e-12);
    CHECK(std::abs(b2(1, 2) - Cx(0, 1)) < 1e-12);
    CHECK(std::abs(b2(0, 2)) < 1e-14);

    // the m = 1 sector vanishes; half-integer sectors vanish identically
    CHECK(max_abs(box_triple_prime(2, t2)) == 0.0);
    CHECK(max_abs(box_triple_prime(1, t2)) == 0.0);

    for (int k = 1; k <= 8; ++k) {
        Truncation t(k);
        for (int J2 = 0; J2 <= k; ++J2) {
            const Eigen::MatrixXcd m = box_triple_prime(J2, t);
            if (J2 % 2 == 1) {
                CHECK(max_abs(m) == 0.0);
                continue;
            }
            CHECK(is_hermitian(m, 1e-12));
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j) {
                    CHECK(std::abs(m(i, j).real()) < 1e-13); // purely imaginary
                    if (std::abs(i - j) != 1) CHECK(std::abs(m(i, j)) < 1e-13); // tridiagonal
                }
            // active level count m = k + 1 - 2 J_a^t
            int active = 0;
            for (int i = 0; i <= k; ++i)
                if (m.row(i).cwiseAbs().maxCoeff() > 1e-13 || m.col(i).cwiseAbs().maxCoeff() > 1e-13)
                    ++active;
            const int expct = k + 1 - J2;
            if (expct >= 2) CHECK(active == expct);
            else CHECK(active == 0);
        }
    }
}

TEST_CASE("nonvanishing sector count matches N1") {
    for (int k = 1; k <= 12; ++k) {
        Truncation t(k);
        int nonzero = 0;
        for (int J2 = 0; J2 <= k; J2 += 2)
            if (max_abs(box_triple_prime(J2, t)) > 1e-13) ++nonzero;
        CHECK(nonzero == sector_count(1, t));
    }
}

TEST_CASE("g_move diagonalizes with the fixed conventions") {
    Truncation t1(1), t2(2);
    const GMove g1 = g_move(0, t1);
    CHECK(g1.spectrum[0] == doctest::Approx(1.0));
    CHECK(g1.spectrum[1] == doctest::Approx(-1.0));
    // HS up to the phase convention; compare the conjugated diagonal
    Eigen::MatrixXcd diag = g1.g * box_triple_prime(0, t1) * g1.g.adjoint();
    CHECK(std::abs(diag(0, 0) - Cx(1, 0)) < 1e-12);
    CHECK(std::abs(diag(1, 1) - Cx(-1, 0)) < 1e-12);
    CHECK(std::abs(diag(0, 1)) < 1e-12);

    const GMove g2 = g_move(0, t2);
    CHECK(g2.spectrum[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(g2.spectrum[1] == doctest::Approx(0.0));
    CHECK(g2.spectrum[2] == doctest::Approx(-std::sqrt(2.0)));

    for (int k = 1; k <= 8; ++k) {
        Truncation t(k);
        for (int J2 = 0; J2 <= k; J2 += 2) {
            const GMove g = g_move(J2, t);
            CHECK(is_unitary(g.g, 1e-12));
            Eigen::MatrixXcd d = g.g * box_triple_prime(J2, t) * g.g.adjoint();
            for (int i = 0; i <= k; ++i) d(i, i) -= g.spectrum[i];
            CHECK(max_abs(d) < 1e-10);
            // spectrum symmetric about zero
            for (int i = 0; i <= k; ++i)
                CHECK(g.spectrum[i] == doctest::Approx(-g.spectrum[k - i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("electric casimir") {
    Truncation t2(2);
    CHECK(electric_casimir(0, t2, false) == 0.0);
    CHECK(electric_casimir(0, t2, true) == 0.0);
    CHECK(electric_casimir(1, t2, false) == doctest::Approx(0.75));
    const double pi = 3.14159265358979323846;
    const double want = std::sin(pi / 8) * std::sin(3 * pi / 8) / (std::sin(pi / 4) * std::sin(pi / 4));
    CHECK(electric_casimir(1, t2, true) == doctest::Approx(want));
}

TEST_CASE("flux hierarchy inversion") {
    // k = 7, J_a^t = 1 relates <1/2|box|1> and <5/2|box|3>
    Truncation t7(7);
    const Eigen::MatrixXcd m = box_triple_prime(2, t7);
    CHECK(std::abs(m(2, 1) - m(6, 5)) < 1e-12);
    for (int k = 1; k <= 12; ++k) CHECK(fhi_check(Truncation(k)));
}

TEST_CASE("f-sequence diagonalization oracle, k <= 2") {
    for (int k = 1; k <= 2; ++k) {
        const FSequenceReport rep = verify_f_sequence(Truncation(k));
        CHECK(rep.passed());
        CHECK(rep.max_dev < 1e-10);
    }
}

TEST_CASE("evolution params validation") {
    CHECK_THROWS(EvolutionParams{0.1, -1.0, 1}.validate());
    CHECK_THROWS(EvolutionParams{0.1, 1.0, 0}.validate());
    EvolutionParams ok{0.1, 1.0, 4};
    ok.validate();
}
