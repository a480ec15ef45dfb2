// su2k: q-deformed SU(2)_k plaquette-operator circuit synthesis front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "su2k/fsequence.hpp"
#include "su2k/gauge.hpp"
#include "su2k/plaquette.hpp"
#include "su2k/qalgebra.hpp"
#include "su2k/sim.hpp"
#include "su2k/synth.hpp"

using namespace su2k;

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Scheme parse_scheme(const std::string& s) {
    if (s == "baseline") return Scheme::baseline;
    if (s == "reduced") return Scheme::reduced;
    if (s == "parity-k1") return Scheme::parity_k1;
    if (s == "nondeformed") return Scheme::nondeformed_reference;
    throw CLI::ValidationError("--scheme", "unknown scheme '" + s + "'");
}

struct VerifyRow {
    std::string suite, check;
    bool pass;
    double max_dev;
};

void print_rows(const std::vector<VerifyRow>& rows, const std::string& format) {
    if (format == "json") {
        std::printf("[\n");
        for (size_t i = 0; i < rows.size(); ++i)
            std::printf("  {\"suite\":\"%s\",\"check\":\"%s\",\"status\":\"%s\",\"max_dev\":%s}%s\n",
                        rows[i].suite.c_str(), rows[i].check.c_str(), rows[i].pass ? "pass" : "fail",
                        fmt17(rows[i].max_dev).c_str(), i + 1 < rows.size() ? "," : "");
        std::printf("]\n");
    } else {
        std::printf("suite,check,status,max_dev\n");
        for (const auto& r : rows)
            std::printf("%s,%s,%s,%s\n", r.suite.c_str(), r.check.c_str(), r.pass ? "pass" : "fail",
                        fmt17(r.max_dev).c_str());
    }
}

void verify_qalgebra(int k, std::vector<VerifyRow>& rows) {
    Truncation t(k);
    double dev = 0;
    for (int n = 0; n <= k + 2; ++n) dev = std::max(dev, std::abs(q_number(n, t) - q_number(k + 2 - n, t)));
    rows.push_back({"qalgebra", "q_number_inversion", dev < 1e-12, dev});

    double orto = 0;
    for (int j1 = 0; j1 <= k; ++j1)
        for (int j2 = 0; j2 <= k; ++j2)
            for (int j3 = 0; j3 <= k; ++j3)
                for (int j4 = 0; j4 <= k; ++j4)
                    for (int j = 0; j <= k; ++j) {
                        if (!admissible2(j1, j4, j, k) || !admissible2(j2, j3, j, k)) continue;
                        for (int jp = 0; jp <= k; ++jp) {
                            if (!admissible2(j1, j4, jp, k) || !admissible2(j2, j3, jp, k)) continue;
                            double s = 0;
                            for (int J = 0; J <= k; ++J)
                                s += f_symbol(j1, j2, J, j3, j4, jp, t) * f_symbol(j1, j2, J, j3, j4, j, t);
                            orto = std::max(orto, std::abs(s - (j == jp ? 1.0 : 0.0)));
                        }
                    }
    rows.push_back({"qalgebra", "orthogonality", orto < 1e-10, orto});

    std::srand(12345);
    double pent = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        int j[9];
        for (int& x : j) x = std::rand() % (k + 1);
        double lhs = 0;
        for (int J = 0; J <= k; ++J)
            lhs += f_symbol(j[0], j[1], j[4], j[2], j[3], J, t) *
                   f_symbol(j[5], j[6], j[3], J, j[0], j[7], t) *
                   f_symbol(j[7], j[6], J, j[2], j[1], j[8], t);
        const double rhs = f_symbol(j[0], j[1], j[4], j[8], j[5], j[7], t) *
                           f_symbol(j[5], j[6], j[3], j[2], j[4], j[8], t);
        pent = std::max(pent, std::abs(lhs - rhs));
    }
    rows.push_back({"qalgebra", "pentagon_random", pent < 1e-10, pent});
}

void verify_gauge(int k, std::vector<VerifyRow>& rows) {
    bool closed = true;
    for (int kk = 0; kk <= 200; ++kk)
        if (!(phys_dim_closed_form(Truncation(kk)) == phys_dim(Truncation(kk), true))) closed = false;
    rows.push_back({"gauge", "closed_form_vs_transfer_matrix", closed, 0.0});

    bool brute = true;
    for (int kk = 0; kk <= std::min(k, 5); ++kk)
        for (bool def : {false, true})
            if (!(PhysDim(enumerate_physical(Truncation(kk), def).size()) == phys_dim(Truncation(kk), def)))
                brute = false;
    rows.push_back({"gauge", "enumeration_vs_transfer_matrix", brute, 0.0});
}

void verify_plaquette(int k, std::vector<VerifyRow>& rows) {
    const int kk = std::min(k, 3);
    const FSequenceReport rep = verify_f_sequence(Truncation(kk));
    rows.push_back({"plaquette", "f_sequence_k" + std::to_string(kk), rep.passed(), rep.max_dev});
}

void verify_fhi(int k, std::vector<VerifyRow>& rows) {
    bool ok = true;
    for (int kk = 1; kk <= std::max(k, 12); ++kk)
        if (!fhi_check(Truncation(kk))) ok = false;
    rows.push_back({"fhi", "persymmetry_sweep", ok, 0.0});
}

void verify_synth(int k, std::vector<VerifyRow>& rows) {
    Truncation t(k);
    EvolutionParams p{0.2, 1.0, 1};
    bool counts = true;
    for (Scheme s : {Scheme::baseline, Scheme::reduced})
        if (emit_trotter_step(t, p, s).gcx_count() != gcx_count(s, t)) counts = false;
    if (k == 1 && emit_parity_circuit_k1(p).gcx_count() != 48) counts = false;
    rows.push_back({"synth", "emitted_counts_match_formulas", counts, 0.0});

    bool hist = true;
    for (auto [mv, ell] :
         std::initializer_list<std::pair<Move, int>>{{Move::F1, 4}, {Move::F3, 3}, {Move::G, 1}}) {
        std::vector<long long> got(k + 2, 0);
        for (const ControlSector& sec : control_sectors(mv, t)) ++got[sec.m()];
        for (int m = 1; m <= k + 1; ++m)
            if (got[m] != level_distribution(ell, m, t)) hist = false;
    }
    rows.push_back({"synth", "level_distribution_histogram", hist, 0.0});
}

void verify_sim(int k, std::vector<VerifyRow>& rows) {
    if (k > 2) {
        rows.push_back({"sim", "skipped_k_gt_2", true, 0.0});
        return;
    }
    const double tau = (k == 1) ? 0.3 : 0.2;
    for (Scheme s : {Scheme::baseline, Scheme::reduced}) {
        const GateList gl = emit_trotter_step(Truncation(k), {tau, 1.0, 1}, s);
        const CompareResult r = compare_on_physical(gl, Truncation(k), tau);
        rows.push_back({"sim", std::string(scheme_name(s)) + "_vs_reference",
                        r.max_deviation < 1e-8 && r.aux_leakage < 1e-10, r.max_deviation});
    }
    if (k == 1) {
        const CompareResult r = compare_on_physical(emit_parity_circuit_k1({tau, 1.0, 1}), Truncation(1), tau);
        rows.push_back({"sim", "parity_k1_vs_reference", r.max_deviation < 1e-8 && r.aux_leakage < 1e-10,
                        r.max_deviation});
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-deformed SU(2)_k plaquette operator circuit synthesis"};
    app.require_subcommand(1);

    // qnum
    auto* qnum_cmd = app.add_subcommand("qnum", "evaluate a q-number [n]_k");
    int qn_n = 1, qn_k = 1;
    qnum_cmd->add_option("--n", qn_n, "integer argument")->required();
    qnum_cmd->add_option("--k", qn_k, "truncation")->required()->check(CLI::NonNegativeNumber);

    // fsymbol
    auto* fs_cmd = app.add_subcommand("fsymbol", "evaluate an F-symbol [a b e; c d f]");
    int fs_k = 1;
    std::vector<int> fs_labels;
    fs_cmd->add_option("--k", fs_k, "truncation")->required()->check(CLI::NonNegativeNumber);
    fs_cmd->add_option("--labels", fs_labels, "doubled spins 2a,2b,2e,2c,2d,2f")
        ->required()
        ->delimiter(',')
        ->expected(6);

    // physdim
    auto* pd_cmd = app.add_subcommand("physdim", "physical Hilbert space dimensions");
    int pd_kmax = 10;
    std::string pd_format = "csv";
    pd_cmd->add_option("--kmax", pd_kmax, "largest truncation")->required()->check(CLI::NonNegativeNumber);
    pd_cmd->add_option("--format", pd_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    // operator
    auto* op_cmd = app.add_subcommand("operator", "dump box''' sectors and spectra");
    int op_k = 1;
    op_cmd->add_option("--k", op_k, "truncation")->required()->check(CLI::PositiveNumber);

    // synth
    auto* sy_cmd = app.add_subcommand("synth", "emit a Trotter-step gate list");
    int sy_k = 1;
    double sy_tau = 0.3, sy_g2 = 1.0;
    int sy_nt = 1;
    std::string sy_scheme = "reduced", sy_out;
    sy_cmd->add_option("--k", sy_k, "truncation")->required()->check(CLI::PositiveNumber);
    sy_cmd->add_option("--tau", sy_tau, "Trotter angle tau = t/(g^2 N_T)")->required();
    sy_cmd->add_option("--scheme", sy_scheme, "baseline|reduced|parity-k1");
    sy_cmd->add_option("--g2", sy_g2, "coupling g^2");
    sy_cmd->add_option("--nt", sy_nt, "Trotter steps");
    sy_cmd->add_option("--out", sy_out, "output file")->required();

    // resources
    auto* rs_cmd = app.add_subcommand("resources", "GCX counts per scheme");
    int rs_kmax = 8;
    std::string rs_format = "csv";
    rs_cmd->add_option("--kmax", rs_kmax, "largest truncation")->required()->check(CLI::PositiveNumber);
    rs_cmd->add_option("--format", rs_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    bool rs_csv = false;
    rs_cmd->add_flag("--csv", rs_csv, "shorthand for --format csv");

    // verify
    auto* vf_cmd = app.add_subcommand("verify", "run the identity and oracle suites");
    int vf_k = 2;
    std::string vf_format = "csv";
    bool vf_all = false, vf_qalg = false, vf_gauge = false, vf_plaq = false, vf_fhi = false,
         vf_synth = false, vf_sim = false;
    vf_cmd->add_option("--k", vf_k, "truncation")->required()->check(CLI::NonNegativeNumber);
    vf_cmd->add_option("--format", vf_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    vf_cmd->add_flag("--all", vf_all, "run every suite");
    vf_cmd->add_flag("--qalgebra", vf_qalg, "identity suite");
    vf_cmd->add_flag("--gauge", vf_gauge, "counting oracle suite");
    vf_cmd->add_flag("--plaquette", vf_plaq, "F-sequence oracle");
    vf_cmd->add_flag("--fhi", vf_fhi, "flux hierarchy inversion sweep");
    vf_cmd->add_flag("--synth", vf_synth, "count reconciliation");
    vf_cmd->add_flag("--sim", vf_sim, "circuit-vs-reference comparison");

    // simulate
    auto* sm_cmd = app.add_subcommand("simulate", "compare a synthesized circuit to the exact evolution");
    int sm_k = 1;
    double sm_tau = 0.3;
    std::string sm_scheme = "reduced";
    sm_cmd->add_option("--k", sm_k, "truncation (<= 2)")->required()->check(CLI::PositiveNumber);
    sm_cmd->add_option("--tau", sm_tau, "Trotter angle")->required();
    sm_cmd->add_option("--scheme", sm_scheme, "baseline|reduced|parity-k1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << app.help() << std::endl;
        app.exit(e);
        return 2;
    }

    try {
        if (*qnum_cmd) {
            std::printf("%s\n", fmt17(q_number(qn_n, Truncation(qn_k))).c_str());
            return 0;
        }

        if (*fs_cmd) {
            Truncation t(fs_k);
            const double v = f_symbol(fs_labels[0], fs_labels[1], fs_labels[2], fs_labels[3],
                                      fs_labels[4], fs_labels[5], t);
            std::printf("%s\n", fmt17(v).c_str());
            return 0;
        }

        if (*pd_cmd) {
            if (pd_format == "json") std::printf("[\n");
            else std::printf("k,dim_q,dim_nq,ratio\n");
            for (int k = 0; k <= pd_kmax; ++k) {
                Truncation t(k);
                const PhysDim dq = phys_dim(t, true), dn = phys_dim(t, false);
                const double ratio = dq.as_double() / dn.as_double();
                if (pd_format == "json")
                    std::printf("  {\"k\":%d,\"dim_q\":%s,\"dim_nq\":%s,\"ratio\":%s}%s\n", k,
                                dq.str().c_str(), dn.str().c_str(), fmt17(ratio).c_str(),
                                k < pd_kmax ? "," : "");
                else
                    std::printf("%d,%s,%s,%s\n", k, dq.str().c_str(), dn.str().c_str(),
                                fmt17(ratio).c_str());
            }
            if (pd_format == "json") std::printf("]\n");
            return 0;
        }

        if (*op_cmd) {
            Truncation t(op_k);
            std::printf("{\"k\":%d,\"sectors\":[", op_k);
            bool first = true;
            for (const ControlSector& sec : control_sectors(Move::G, t)) {
                const int J2 = sec.controls2[0];
                const Eigen::MatrixXcd box = box_triple_prime(J2, t);
                const GMove g = g_move(J2, t);
                std::printf("%s\n  {\"two_J_a_t\":%d,\"m\":%d,\"box\":[", first ? "" : ",", J2, sec.m());
                for (int r = 0; r <= t.k; ++r) {
                    std::printf("%s[", r ? "," : "");
                    for (int c = 0; c <= t.k; ++c)
                        std::printf("%s[%s,%s]", c ? "," : "", fmt17(box(r, c).real()).c_str(),
                                    fmt17(box(r, c).imag()).c_str());
                    std::printf("]");
                }
                std::printf("],\"spectrum\":[");
                for (int i = 0; i <= t.k; ++i)
                    std::printf("%s%s", i ? "," : "", fmt17(g.spectrum[i]).c_str());
                std::printf("]}");
                first = false;
            }
            std::printf("\n]}\n");
            return 0;
        }

        if (*sy_cmd) {
            const Scheme scheme = parse_scheme(sy_scheme);
            EvolutionParams p{sy_tau, sy_g2, sy_nt};
            const GateList gl = (scheme == Scheme::parity_k1 && sy_k == 1)
                                    ? emit_parity_circuit_k1(p)
                                    : emit_trotter_step(Truncation(sy_k), p, scheme);
            std::ofstream out(sy_out);
            if (!out) throw std::runtime_error("cannot open output file " + sy_out);
            out << to_text(gl);
            std::printf("{\"k\":%d,\"scheme\":\"%s\",\"gcx\":%d,\"gates\":%zu,\"file\":\"%s\"}\n", sy_k,
                        scheme_name(scheme), gl.gcx_count(), gl.gates.size(), sy_out.c_str());
            return 0;
        }

        if (*rs_cmd) {
            if (rs_format == "json") std::printf("[\n");
            else std::printf("k,scheme,gcx\n");
            bool first = true;
            for (int k = 1; k <= rs_kmax; ++k) {
                Truncation t(k);
                std::vector<Scheme> schemes = {Scheme::nondeformed_reference, Scheme::baseline,
                                               Scheme::reduced};
                if (k == 1) schemes.push_back(Scheme::parity_k1);
                for (Scheme s : schemes) {
                    if (rs_format == "json") {
                        std::printf("%s  {\"k\":%d,\"scheme\":\"%s\",\"gcx\":%lld}", first ? "" : ",\n",
                                    k, scheme_name(s), gcx_count(s, t));
                        first = false;
                    } else {
                        std::printf("%d,%s,%lld\n", k, scheme_name(s), gcx_count(s, t));
                    }
                }
            }
            if (rs_format == "json") std::printf("\n]\n");
            return 0;
        }

        if (*vf_cmd) {
            std::vector<VerifyRow> rows;
            if (vf_all || vf_qalg) verify_qalgebra(std::min(vf_k, 6), rows);
            if (vf_all || vf_gauge) verify_gauge(vf_k, rows);
            if (vf_all || vf_plaq) verify_plaquette(vf_k, rows);
            if (vf_all || vf_fhi) verify_fhi(vf_k, rows);
            if (vf_all || vf_synth) verify_synth(std::min(vf_k, 6), rows);
            if (vf_all || vf_sim) verify_sim(vf_k, rows);
            if (rows.empty()) {
                std::cerr << "verify: select at least one suite (or --all)\n";
                return 2;
            }
            print_rows(rows, vf_format);
            for (const auto& r : rows)
                if (!r.pass) return 1;
            return 0;
        }

        if (*sm_cmd) {
            const Scheme scheme = parse_scheme(sm_scheme);
            if (sm_k > 2) throw CLI::ValidationError("--k", "dense simulation is guarded at k <= 2");
            EvolutionParams p{sm_tau, 1.0, 1};
            const GateList gl = (scheme == Scheme::parity_k1) ? emit_parity_circuit_k1(p)
                                                              : emit_trotter_step(Truncation(sm_k), p, scheme);
            const CompareResult r = compare_on_physical(gl, Truncation(sm_k), sm_tau);
            std::printf("{\"k\":%d,\"tau\":%s,\"scheme\":\"%s\",\"max_deviation\":%s,\"aux_leakage\":%s}\n",
                        sm_k, fmt17(sm_tau).c_str(), scheme_name(scheme), fmt17(r.max_deviation).c_str(),
                        fmt17(r.aux_leakage).c_str());
            return r.max_deviation < 1e-8 && r.aux_leakage < 1e-10 ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << std::endl;
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 2;
}
