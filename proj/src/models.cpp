#include "nphoton/models.hpp"

#include "nphoton/combinatorics.hpp"
#include "nphoton/errors.hpp"

#include <cmath>
#include <string>

namespace nphoton {

int StabilizerSpec::order(int n) const {
    if (form == StabilizerForm::number_power) return m > 0 ? m : n / 2 + 1;
    return m;
}

SystemSpec SystemSpec::single(double omega_q, int n, double g, std::size_t trunc, double omega) {
    SystemSpec s;
    s.qubits = {{omega_q, n, g}};
    s.oscillators = {{omega, trunc}};
    s.topology = Topology::single;
    return s;
}

namespace {

void cfg(bool ok, const std::string& msg) { require(ok, ErrorKind::config, msg); }

bool finite(double x) { return std::isfinite(x); }

}  // namespace

void SystemSpec::validate() const {
    cfg(!qubits.empty(), "at least one qubit is required");
    cfg(!oscillators.empty(), "at least one oscillator is required");
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const auto& q = qubits[i];
        const std::string at = "qubits[" + std::to_string(i) + "]";
        cfg(finite(q.omega_q), at + ".omega_q must be finite");
        cfg(q.n >= 1, at + ".n must be >= 1");
        cfg(finite(q.g) && q.g >= 0.0, at + ".g must be finite and >= 0");
    }
    for (std::size_t i = 0; i < oscillators.size(); ++i) {
        const auto& o = oscillators[i];
        const std::string at = "oscillators[" + std::to_string(i) + "]";
        cfg(finite(o.omega) && o.omega > 0.0, at + ".omega must be positive");
        cfg(o.trunc >= 2, at + ".trunc must be >= 2");
    }
    switch (topology) {
        case Topology::single:
            cfg(qubits.size() == 1 && oscillators.size() == 1, "topology single needs 1 qubit and 1 oscillator");
            break;
        case Topology::multiqubit:
            cfg(oscillators.size() == 1, "topology multiqubit needs exactly 1 oscillator");
            break;
        case Topology::multimode: {
            cfg(qubits.size() == 1, "topology multimode needs exactly 1 qubit");
            cfg(!couplings.empty(), "topology multimode needs couplings");
            std::vector<bool> seen(oscillators.size(), false);
            for (std::size_t i = 0; i < couplings.size(); ++i) {
                const auto& c = couplings[i];
                const std::string at = "couplings[" + std::to_string(i) + "]";
                cfg(c.qubit < qubits.size(), at + ".qubit out of range");
                cfg(c.oscillator < oscillators.size(), at + ".oscillator out of range");
                cfg(!seen[c.oscillator], at + " duplicates an oscillator");
                seen[c.oscillator] = true;
                cfg(c.n >= 1, at + ".n must be >= 1");
                cfg(finite(c.g) && c.g >= 0.0, at + ".g must be finite and >= 0");
            }
            break;
        }
    }
    if (stabilizer) {
        cfg(finite(stabilizer->eta) && stabilizer->eta >= 0.0, "stabilizer.eta must be >= 0");
        cfg(stabilizer->m >= 0, "stabilizer.m must be >= 0");
        if (stabilizer->form == StabilizerForm::full_position_power)
            cfg(stabilizer->m > 0 && stabilizer->m % 2 == 0, "full_position_power needs an even m");
    }
}

HilbertLayout SystemSpec::layout() const {
    std::vector<Subsystem> s;
    for (std::size_t i = 0; i < qubits.size(); ++i) s.push_back({SubsystemKind::qubit, 2});
    for (const auto& o : oscillators) s.push_back({SubsystemKind::oscillator, o.trunc});
    return HilbertLayout(std::move(s));
}

std::vector<Coupling> SystemSpec::edges() const {
    if (topology == Topology::multimode) return couplings;
    std::vector<Coupling> out;
    for (std::size_t i = 0; i < qubits.size(); ++i) out.push_back({i, 0, qubits[i].n, qubits[i].g});
    return out;
}

double SystemSpec::delta(const Coupling& c) const {
    return qubits.at(c.qubit).omega_q - c.n * oscillators.at(c.oscillator).omega;
}

double SystemSpec::sigma(const Coupling& c) const {
    return qubits.at(c.qubit).omega_q + c.n * oscillators.at(c.oscillator).omega;
}

namespace {

void need_topology(const SystemSpec& s, Topology t, const char* who) {
    s.validate();
    require(s.topology == t, ErrorKind::usage, std::string(who) + ": wrong topology");
}

std::size_t osc_slot(const SystemSpec& s, std::size_t k) { return s.qubits.size() + k; }

void check_truncation(const SystemSpec& s, const Coupling& c) {
    require(static_cast<std::size_t>(c.n) < s.oscillators[c.oscillator].trunc,
            ErrorKind::degenerate_truncation, "interaction order n must be below the truncation");
}

void check_dispersive(const SystemSpec& s, const Coupling& c, Regime regime) {
    const double scale = 1.0 + std::abs(s.qubits[c.qubit].omega_q);
    require(std::abs(s.delta(c)) > 1e-12 * scale, ErrorKind::resonance,
            "Δ_n = 0: dispersive regime undefined");
    if (regime == Regime::nonrwa)
        require(std::abs(s.sigma(c)) > 1e-12 * scale, ErrorKind::resonance, "Σ_n = 0: non-RWA shifts undefined");
}

// Σ_k c_k N^k for k in [k0, coeffs.size()).
SparseOperator number_poly(std::size_t trunc, const std::vector<double>& coeffs, std::size_t k0) {
    const auto n = number(trunc);
    SparseOperator acc = zero(n.layout());
    for (std::size_t k = k0; k < coeffs.size(); ++k) acc = acc + coeffs[k] * op_pow(n, static_cast<unsigned>(k));
    return acc;
}

// a^{†m} a^m, diagonal with falling factorials.
SparseOperator falling_factorial_diag(std::size_t trunc, int m) {
    std::vector<double> d(trunc);
    for (std::size_t j = 0; j < trunc; ++j) {
        double v = 1.0;
        for (int i = 0; i < m; ++i) v *= static_cast<double>(j) - i;
        d[j] = v;
    }
    return diagonal_operator(HilbertLayout::oscillator(trunc), d);
}

SparseOperator stabilizer_term(const SystemSpec& s, const Coupling& c) {
    const auto& st = *s.stabilizer;
    const std::size_t nt = s.oscillators[c.oscillator].trunc;
    const int m = st.order(c.n);
    SparseOperator osc;
    if (st.form == StabilizerForm::number_power) {
        osc = falling_factorial_diag(nt, m);
    } else {
        require(m > c.n && m % 2 == 0, ErrorKind::config, "full_position_power needs even m > n");
        osc = 0.5 * plus_dagger(op_pow(plus_dagger(destroy(nt)), static_cast<unsigned>(m)));
    }
    return (st.eta * c.g) * embed(s.layout(), {{osc_slot(s, c.oscillator), osc}});
}

SparseOperator bare(const SystemSpec& s) {
    const auto layout = s.layout();
    SparseOperator h = zero(layout);
    for (std::size_t k = 0; k < s.oscillators.size(); ++k)
        h = h + s.oscillators[k].omega * embed(layout, {{osc_slot(s, k), number(s.oscillators[k].trunc)}});
    for (std::size_t l = 0; l < s.qubits.size(); ++l)
        h = h + (s.qubits[l].omega_q / 2.0) * embed(layout, {{l, pauli(Pauli::z)}});
    return h;
}

SparseOperator ladder_pow(std::size_t trunc, int n) { return op_pow(destroy(trunc), static_cast<unsigned>(n)); }

// g σx (a^n + a†^n) on one edge.
SparseOperator rabi_term(const SystemSpec& s, const Coupling& c) {
    const std::size_t nt = s.oscillators[c.oscillator].trunc;
    return c.g * embed(s.layout(), {{c.qubit, pauli(Pauli::x)},
                                    {osc_slot(s, c.oscillator), plus_dagger(ladder_pow(nt, c.n))}});
}

// g (σ+ a^n + σ- a†^n) on one edge.
SparseOperator jc_term(const SystemSpec& s, const Coupling& c) {
    const std::size_t nt = s.oscillators[c.oscillator].trunc;
    return c.g * plus_dagger(embed(s.layout(), {{c.qubit, pauli(Pauli::plus)},
                                                {osc_slot(s, c.oscillator), ladder_pow(nt, c.n)}}));
}

struct Shifts {
    double chi, xi, c_plus, c_minus;  // c_plus multiplies σz ΣC⁺N^k, c_minus multiplies ΣC⁻N^k
};

Shifts shifts(const SystemSpec& s, const Coupling& c, Regime regime) {
    check_dispersive(s, c, regime);
    const double g2 = c.g * c.g;
    const double chi = g2 / s.delta(c);
    const double xi = regime == Regime::nonrwa ? g2 / s.sigma(c) : 0.0;
    return {chi, xi, (chi + xi) / 2.0, (chi - xi) / 2.0};
}

// Single-edge dispersive shifts: c+ σz ΣC⁺N^k + c- ΣC⁻N^k (+ squeezing).
SparseOperator dispersive_edge(const SystemSpec& s, const Coupling& c, const DispersiveOptions& opt) {
    const auto sh = shifts(s, c, opt.regime);
    const std::size_t nt = s.oscillators[c.oscillator].trunc;
    const auto poly = commutator_poly(c.n);
    const auto layout = s.layout();
    const std::size_t slot = osc_slot(s, c.oscillator);
    SparseOperator h = sh.c_plus * embed(layout, {{c.qubit, pauli(Pauli::z)},
                                                  {slot, number_poly(nt, to_double(poly.cplus), 0)}});
    h = h + sh.c_minus * embed(layout, {{slot, number_poly(nt, to_double(poly.cminus), opt.constant_offset ? 0 : 1)}});
    if (opt.regime == Regime::nonrwa && opt.include_squeezing)
        h = h + sh.c_plus * embed(layout, {{c.qubit, pauli(Pauli::z)}, {slot, plus_dagger(ladder_pow(nt, 2 * c.n))}});
    return h;
}

}  // namespace

SparseOperator build_nR(const SystemSpec& spec) {
    need_topology(spec, Topology::single, "build_nR");
    const auto c = spec.edges().front();
    check_truncation(spec, c);
    SparseOperator h = bare(spec) + rabi_term(spec, c);
    if (spec.stabilizer) h = h + stabilizer_term(spec, c);
    return h.certified();
}

SparseOperator build_nJC(const SystemSpec& spec) {
    need_topology(spec, Topology::single, "build_nJC");
    const auto c = spec.edges().front();
    check_truncation(spec, c);
    return (bare(spec) + jc_term(spec, c)).certified();
}

SparseOperator build_full_nR(const SystemSpec& spec) {
    need_topology(spec, Topology::single, "build_full_nR");
    const auto c = spec.edges().front();
    check_truncation(spec, c);
    const std::size_t nt = spec.oscillators[0].trunc;
    const auto x = plus_dagger(destroy(nt));
    SparseOperator h = bare(spec) + c.g * embed(spec.layout(), {{0, pauli(Pauli::x)},
                                                               {1, 0.5 * plus_dagger(op_pow(x, c.n))}});
    if (spec.stabilizer) {
        StabilizerSpec st = *spec.stabilizer;
        st.form = StabilizerForm::full_position_power;
        if (st.m == 0) st.m = c.n % 2 == 0 ? c.n + 2 : c.n + 1;
        SystemSpec s2 = spec;
        s2.stabilizer = st;
        h = h + stabilizer_term(s2, c);
    }
    return h.certified();
}

SparseOperator build_dispersive(const SystemSpec& spec, Regime regime, bool include_squeezing) {
    DispersiveOptions opt;
    opt.regime = regime;
    opt.include_squeezing = include_squeezing;
    return build_dispersive(spec, opt);
}

SparseOperator build_dispersive(const SystemSpec& spec, const DispersiveOptions& opt) {
    need_topology(spec, Topology::single, "build_dispersive");
    const auto c = spec.edges().front();
    check_truncation(spec, c);
    return (bare(spec) + dispersive_edge(spec, c, opt)).certified();
}

SparseOperator build_nDicke(const SystemSpec& spec, bool rwa) {
    need_topology(spec, Topology::multiqubit, "build_nDicke");
    SparseOperator h = bare(spec);
    for (const auto& c : spec.edges()) {
        check_truncation(spec, c);
        h = h + (rwa ? jc_term(spec, c) : rabi_term(spec, c));
    }
    return h.certified();
}

SparseOperator build_multiqubit_dispersive(const SystemSpec& spec, Regime regime, bool cross_k0) {
    DispersiveOptions opt;
    opt.regime = regime;
    opt.cross_k0 = cross_k0;
    return build_multiqubit_dispersive(spec, opt);
}

SparseOperator build_multiqubit_dispersive(const SystemSpec& spec, const DispersiveOptions& opt) {
    need_topology(spec, Topology::multiqubit, "build_multiqubit_dispersive");
    const auto edges = spec.edges();
    const int n = edges.front().n;
    for (const auto& c : edges) {
        require(c.n == n, ErrorKind::usage, "multiqubit dispersive model needs a common order n");
        check_truncation(spec, c);
    }
    const auto layout = spec.layout();
    const std::size_t nt = spec.oscillators[0].trunc;
    const std::size_t slot = osc_slot(spec, 0);
    SparseOperator h = bare(spec);
    for (const auto& c : edges) h = h + dispersive_edge(spec, c, opt);

    const auto cm = number_poly(nt, to_double(commutator_poly(n).cminus), opt.cross_k0 ? 0 : 1);
    for (std::size_t l = 0; l < edges.size(); ++l)
        for (std::size_t m = l + 1; m < edges.size(); ++m) {
            const auto& a = edges[l];
            const auto& b = edges[m];
            const double gg = a.g * b.g;
            const double chit = gg * (1.0 / spec.delta(a) + 1.0 / spec.delta(b));
            if (opt.regime == Regime::rwa) {
                const auto xy = plus_dagger(embed(layout, {{l, pauli(Pauli::plus)}, {m, pauli(Pauli::minus)}, {slot, cm}}));
                h = h + (chit / 2.0) * xy;
            } else {
                const double xit = gg * (1.0 / spec.sigma(a) + 1.0 / spec.sigma(b));
                const auto xx = embed(layout, {{l, pauli(Pauli::x)}, {m, pauli(Pauli::x)}, {slot, cm}});
                h = h + ((chit - xit) / 2.0) * xx;
            }
        }
    return h.certified();
}

Block4 two_qubit_block(std::size_t j, const SystemSpec& spec, const DispersiveOptions& opt) {
    spec.validate();
    require(spec.topology == Topology::multiqubit && spec.qubits.size() == 2, ErrorKind::usage,
            "two_qubit_block needs two qubits sharing one oscillator");
    const auto edges = spec.edges();
    const int n = edges[0].n;
    require(edges[1].n == n, ErrorKind::usage, "two_qubit_block needs a common order n");
    const auto poly = commutator_poly(n);
    const double jd = static_cast<double>(j);
    auto eval = [&](const std::vector<BigInt>& c, std::size_t k0) {
        double s = 0.0, p = 1.0;
        for (std::size_t k = 0; k < c.size(); ++k, p *= jd)
            if (k >= k0) s += c[k].convert_to<double>() * p;
        return s;
    };
    const double pplus = eval(poly.cplus, 0);
    const double pminus = eval(poly.cminus, opt.constant_offset ? 0 : 1);
    const double pcross = eval(poly.cminus, opt.cross_k0 ? 0 : 1);

    std::array<double, 2> w{}, cp{}, cmn{};
    for (int l = 0; l < 2; ++l) {
        const auto sh = shifts(spec, edges[l], opt.regime);
        w[l] = spec.qubits[l].omega_q;
        cp[l] = sh.c_plus;
        cmn[l] = sh.c_minus;
    }
    const double gg = edges[0].g * edges[1].g;
    const double chit = gg * (1.0 / spec.delta(edges[0]) + 1.0 / spec.delta(edges[1]));
    const double xit = opt.regime == Regime::nonrwa
                           ? gg * (1.0 / spec.sigma(edges[0]) + 1.0 / spec.sigma(edges[1]))
                           : 0.0;
    const double base = spec.oscillators[0].omega * jd + (cmn[0] + cmn[1]) * pminus;

    Block4 b{};
    const int sgn[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int i = 0; i < 4; ++i) {
        double e = base;
        for (int l = 0; l < 2; ++l) e += sgn[i][l] * (w[l] / 2.0 + cp[l] * pplus);
        b[i][i] = e;
    }
    const double flip = (chit - xit) / 2.0 * pcross;
    b[1][2] = b[2][1] = flip;
    if (opt.regime == Regime::nonrwa) b[0][3] = b[3][0] = flip;
    return b;
}

SparseOperator build_multimode(const SystemSpec& spec, MultimodeVariant variant, const DispersiveOptions& base_opt) {
    need_topology(spec, Topology::multimode, "build_multimode");
    const auto edges = spec.edges();
    for (const auto& c : edges) check_truncation(spec, c);
    SparseOperator h = bare(spec);
    if (variant == MultimodeVariant::mmr || variant == MultimodeVariant::mmjc) {
        for (const auto& c : edges)
            h = h + (variant == MultimodeVariant::mmr ? rabi_term(spec, c) : jc_term(spec, c));
        return h.certified();
    }
    DispersiveOptions opt = base_opt;
    opt.regime = variant == MultimodeVariant::dispersive_rwa ? Regime::rwa : Regime::nonrwa;
    for (const auto& c : edges) h = h + dispersive_edge(spec, c, opt);
    const auto layout = spec.layout();
    for (std::size_t k = 0; k < edges.size(); ++k)
        for (std::size_t l = k + 1; l < edges.size(); ++l) {
            const auto& a = edges[k];
            const auto& b = edges[l];
            const auto ak = ladder_pow(spec.oscillators[a.oscillator].trunc, a.n);
            const auto al = ladder_pow(spec.oscillators[b.oscillator].trunc, b.n);
            const double gg = a.g * b.g;
            const double chit = gg * (1.0 / spec.delta(a) + 1.0 / spec.delta(b));
            if (opt.regime == Regime::rwa) {
                const auto hop = plus_dagger(embed(layout, {{0, pauli(Pauli::z)},
                                                            {osc_slot(spec, a.oscillator), ak.dagger()},
                                                            {osc_slot(spec, b.oscillator), al}}));
                h = h + (chit / 2.0) * hop;
            } else {
                const double xit = gg * (1.0 / spec.sigma(a) + 1.0 / spec.sigma(b));
                const auto xx = embed(layout, {{0, pauli(Pauli::z)},
                                               {osc_slot(spec, a.oscillator), plus_dagger(ak)},
                                               {osc_slot(spec, b.oscillator), plus_dagger(al)}});
                h = h + ((chit + xit) / 2.0) * xx;
            }
        }
    return h.certified();
}

SparseOperator excitation_number(const SystemSpec& spec) {
    spec.validate();
    require(spec.topology != Topology::multimode, ErrorKind::usage, "excitation number needs one oscillator");
    const auto layout = spec.layout();
    SparseOperator c = embed(layout, {{osc_slot(spec, 0), number(spec.oscillators[0].trunc)}});
    const auto pe = SparseOperator(HilbertLayout::qubit(), {{0, 0, 1.0}}).certified();
    for (std::size_t l = 0; l < spec.qubits.size(); ++l)
        c = c + static_cast<double>(spec.qubits[l].n) * embed(layout, {{l, pe}});
    return c.certified();
}

}  // namespace nphoton
