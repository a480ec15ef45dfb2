#include "su2k/gatelist.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace su2k {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

[[noreturn]] void bad(const std::string& what, const std::string& line) {
    throw std::runtime_error("gate list parse error: " + what + " in \"" + line + "\"");
}

} // namespace

Gate Gate::gcx(int c, int cl, int t, int a, int b) {
    Gate g;
    g.kind = Kind::GCX;
    g.control = c;
    g.control_level = cl;
    g.target = t;
    g.l0 = a;
    g.l1 = b;
    return g;
}

Gate Gate::givens(int t, int a, int b, const std::array<std::complex<double>, 4>& u) {
    Gate g;
    g.kind = Kind::GIVENS;
    g.target = t;
    g.l0 = a;
    g.l1 = b;
    g.u2 = u;
    return g;
}

Gate Gate::diag(int t, std::vector<double> phases) {
    Gate g;
    g.kind = Kind::DIAG;
    g.target = t;
    g.phases = std::move(phases);
    return g;
}

Gate Gate::phase1(int t, int level, double phase) {
    Gate g;
    g.kind = Kind::PHASE1;
    g.target = t;
    g.level = level;
    g.phase = phase;
    return g;
}

Gate Gate::localu(int t, std::vector<int> levels, Eigen::MatrixXcd block) {
    Gate g;
    g.kind = Kind::LOCALU;
    g.target = t;
    g.levels = std::move(levels);
    g.block = std::move(block);
    return g;
}

Gate Gate::dagger() const {
    Gate g = *this;
    switch (kind) {
        case Kind::GCX:
            break; // involution
        case Kind::GIVENS:
            g.u2 = {std::conj(u2[0]), std::conj(u2[2]), std::conj(u2[1]), std::conj(u2[3])};
            break;
        case Kind::DIAG:
            for (double& p : g.phases) p = -p;
            break;
        case Kind::PHASE1:
            g.phase = -phase;
            break;
        case Kind::LOCALU:
            g.block = block.adjoint().eval();
            break;
    }
    return g;
}

GateList GateList::for_truncation(int k) {
    GateList gl;
    gl.dims.assign(8, k + 1);
    gl.dims.push_back(5);
    return gl;
}

long long GateList::total_dim() const {
    long long n = 1;
    for (int d : dims) n *= d;
    return n;
}

int GateList::gcx_count() const {
    int n = 0;
    for (const Gate& g : gates)
        if (g.kind == Gate::Kind::GCX) ++n;
    return n;
}

void GateList::append(Gate g) { gates.push_back(std::move(g)); }

void GateList::append(const GateList& other) {
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void GateList::append_dagger(const GateList& other) {
    for (auto it = other.gates.rbegin(); it != other.gates.rend(); ++it)
        gates.push_back(it->dagger());
}

std::string to_text(const GateList& gl) {
    std::ostringstream os;
    os << "QDEFCIRC 1\n";
    os << "REGS";
    for (int d : gl.dims) os << ' ' << d;
    os << '\n';
    for (const Gate& g : gl.gates) {
        switch (g.kind) {
            case Gate::Kind::GCX:
                os << "GCX c=" << g.control << " cl=" << g.control_level << " t=" << g.target
                   << " x=" << g.l0 << ',' << g.l1 << '\n';
                break;
            case Gate::Kind::GIVENS: {
                os << "GIVENS t=" << g.target << " l=" << g.l0 << ',' << g.l1 << " u=";
                for (int i = 0; i < 4; ++i) {
                    if (i) os << ',';
                    os << fmt17(g.u2[i].real()) << ',' << fmt17(g.u2[i].imag());
                }
                os << '\n';
                break;
            }
            case Gate::Kind::DIAG: {
                os << "DIAG t=" << g.target << " p=";
                for (size_t i = 0; i < g.phases.size(); ++i) {
                    if (i) os << ',';
                    os << fmt17(g.phases[i]);
                }
                os << '\n';
                break;
            }
            case Gate::Kind::PHASE1:
                os << "PHASE1 t=" << g.target << " l=" << g.level << " p=" << fmt17(g.phase) << '\n';
                break;
            case Gate::Kind::LOCALU:
                throw std::logic_error("to_text: LOCALU must be lowered before serialization");
        }
    }
    return os.str();
}

namespace {

// "key=value" field scanner
std::string field(std::istringstream& is, const std::string& key, const std::string& line) {
    std::string tok;
    if (!(is >> tok)) bad("missing field " + key, line);
    if (tok.rfind(key + "=", 0) != 0) bad("expected field " + key, line);
    return tok.substr(key.size() + 1);
}

std::vector<double> split_doubles(const std::string& s, const std::string& line) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        size_t pos = 0;
        double v;
        try {
            v = std::stod(item, &pos);
        } catch (...) {
            bad("malformed number '" + item + "'", line);
        }
        if (pos != item.size()) bad("malformed number '" + item + "'", line);
        out.push_back(v);
    }
    return out;
}

std::pair<int, int> split_pair(const std::string& s, const std::string& line) {
    auto comma = s.find(',');
    if (comma == std::string::npos) bad("expected level pair", line);
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

} // namespace

GateList parse_text(const std::string& text) {
    GateList gl;
    std::istringstream in(text);
    std::string line;
    bool have_magic = false, have_regs = false;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream is(line);
        std::string dir;
        if (!(is >> dir)) continue;
        if (!have_magic) {
            std::string ver;
            if (dir != "QDEFCIRC" || !(is >> ver) || ver != "1") bad("expected QDEFCIRC 1 header", line);
            have_magic = true;
            continue;
        }
        if (!have_regs) {
            if (dir != "REGS") bad("expected REGS line", line);
            int d;
            while (is >> d) {
                if (d < 1) bad("register dimension < 1", line);
                gl.dims.push_back(d);
            }
            if (gl.dims.empty()) bad("empty REGS", line);
            have_regs = true;
            continue;
        }
        auto check_reg = [&](int r) {
            if (r < 0 || r >= static_cast<int>(gl.dims.size())) bad("register out of range", line);
        };
        auto check_level = [&](int r, int l) {
            if (l < 0 || l >= gl.dims[r]) bad("level out of range", line);
        };
        if (dir == "GCX") {
            int c = std::stoi(field(is, "c", line));
            int cl = std::stoi(field(is, "cl", line));
            int t = std::stoi(field(is, "t", line));
            auto [a, b] = split_pair(field(is, "x", line), line);
            check_reg(c);
            check_reg(t);
            if (c == t) bad("control equals target", line);
            check_level(c, cl);
            check_level(t, a);
            check_level(t, b);
            if (a == b) bad("degenerate swap pair", line);
            gl.append(Gate::gcx(c, cl, t, a, b));
        } else if (dir == "GIVENS") {
            int t = std::stoi(field(is, "t", line));
            auto [a, b] = split_pair(field(is, "l", line), line);
            auto u = split_doubles(field(is, "u", line), line);
            if (u.size() != 8) bad("GIVENS needs 8 components", line);
            check_reg(t);
            check_level(t, a);
            check_level(t, b);
            gl.append(Gate::givens(t, a, b,
                                   {std::complex<double>{u[0], u[1]}, {u[2], u[3]}, {u[4], u[5]}, {u[6], u[7]}}));
        } else if (dir == "DIAG") {
            int t = std::stoi(field(is, "t", line));
            auto p = split_doubles(field(is, "p", line), line);
            check_reg(t);
            if (static_cast<int>(p.size()) != gl.dims[t]) bad("DIAG length mismatch", line);
            gl.append(Gate::diag(t, std::move(p)));
        } else if (dir == "PHASE1") {
            int t = std::stoi(field(is, "t", line));
            int l = std::stoi(field(is, "l", line));
            double p = std::stod(field(is, "p", line));
            check_reg(t);
            check_level(t, l);
            gl.append(Gate::phase1(t, l, p));
        } else {
            bad("unknown directive '" + dir + "'", line);
        }
        std::string extra;
        if (is >> extra) bad("trailing tokens", line);
    }
    if (!have_magic || !have_regs) throw std::runtime_error("gate list parse error: missing header");
    return gl;
}

} // namespace su2k
