#include "nphoton/commands.hpp"

#include "nphoton/combinatorics.hpp"
#include "nphoton/config.hpp"
#include "nphoton/eigensolve.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace nphoton {

using ojson = nlohmann::ordered_json;

namespace {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    require(!t.empty() && end == t.c_str() + t.size() && std::isfinite(v), ErrorKind::usage,
            "invalid number '" + s + "' in " + what);
    return v;
}

long parse_long(const std::string& s, const std::string& what) {
    const std::string t = trim(s);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    require(!t.empty() && end == t.c_str() + t.size(), ErrorKind::usage, "invalid integer '" + s + "' in " + what);
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

void header(std::ostream& out, const ojson& options, const SystemSpec* spec = nullptr) {
    out << "# schema_version: " << kSchemaVersion << '\n';
    out << "# options: " << options.dump() << '\n';
    if (spec) out << "# system: " << spec_to_json(*spec).dump() << '\n';
}

ojson grid_json(const Grid& g) { return ojson{{"from", g.from}, {"to", g.to}, {"steps", g.steps}}; }

SystemSpec with_coupling(SystemSpec spec, double g) {
    for (auto& q : spec.qubits) q.g = g;
    for (auto& c : spec.couplings) c.g = g;
    return spec;
}

// Evaluates fn(i) for i < n on up to `threads` workers; results are stored by index.
// Returns the first failing index (n if none) and its exception.
template <class R, class F>
std::size_t run_grid(std::size_t n, std::size_t threads, std::vector<std::optional<R>>& results,
                     std::exception_ptr& error, F fn) {
    results.assign(n, std::nullopt);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                results[i].emplace(fn(i));
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const std::size_t nt = std::max<std::size_t>(1, std::min(threads, n));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < n; ++i)
        if (errs[i]) {
            error = errs[i];
            return i;
        }
    return n;
}

SparseOperator build_model(const SystemSpec& spec, ModelKind model, Regime regime) {
    DispersiveOptions opt;
    opt.regime = regime;
    switch (model) {
        case ModelKind::nR: return build_nR(spec);
        case ModelKind::nJC: return build_nJC(spec);
        case ModelKind::full_nR: return build_full_nR(spec);
        case ModelKind::dispersive: return build_dispersive(spec, opt);
        case ModelKind::nDicke: return build_nDicke(spec, regime == Regime::rwa);
        case ModelKind::multiqubit_dispersive: return build_multiqubit_dispersive(spec, opt);
        case ModelKind::mmr: return build_multimode(spec, MultimodeVariant::mmr, opt);
        case ModelKind::mmjc: return build_multimode(spec, MultimodeVariant::mmjc, opt);
        case ModelKind::mm_dispersive:
            return build_multimode(spec,
                                   regime == Regime::rwa ? MultimodeVariant::dispersive_rwa
                                                         : MultimodeVariant::dispersive_nonrwa,
                                   opt);
    }
    throw Error(ErrorKind::usage, "unknown model");
}

std::string label_text(const HilbertLayout& layout, const BareLabel& label) {
    std::string q, o;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        if (layout[i].kind == SubsystemKind::qubit) {
            q += label.digits[i] == 0 ? 'e' : 'g';
        } else {
            if (!o.empty()) o += ' ';
            o += std::to_string(label.digits[i]);
        }
    }
    return q + "|" + o;
}

// Analytic (rwa, nonrwa) for a single-topology label inside the formula's domain.
std::pair<double, double> analytic_pair(const SystemSpec& spec, const BareLabel& label) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (spec.topology != Topology::single) return {nan, nan};
    try {
        const auto p = DispersiveParams::from_spec(spec);
        const std::size_t j = label.digits[1];
        if (!(static_cast<double>(j) < critical_photon_number(p.n, p.g, p.delta))) return {nan, nan};
        const QubitState q = label.digits[0] == 0 ? QubitState::e : QubitState::g;
        return {dispersive_level(p, q, j, Regime::rwa), dispersive_level(p, q, j, Regime::nonrwa)};
    } catch (const Error&) {
        return {nan, nan};
    }
}

}  // namespace

Grid Grid::parse(const std::string& text) {
    const auto parts = split(text, ':');
    require(parts.size() == 3, ErrorKind::usage, "grid must be from:to:steps, got '" + text + "'");
    Grid g;
    g.from = parse_double(parts[0], "grid");
    g.to = parse_double(parts[1], "grid");
    const long steps = parse_long(parts[2], "grid");
    require(steps >= 1, ErrorKind::usage, "grid steps must be >= 1");
    require(steps > 1 || g.from == g.to, ErrorKind::usage, "a single-step grid needs from == to");
    g.steps = static_cast<std::size_t>(steps);
    return g;
}

double Grid::at(std::size_t i) const {
    if (steps == 1) return from;
    if (i + 1 == steps) return to;
    return from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<double> Grid::values() const {
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i) v[i] = at(i);
    return v;
}

std::string Grid::str() const { return num(from) + ":" + num(to) + ":" + std::to_string(steps); }

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split(text, ',')) out.push_back(parse_double(p, "list"));
    require(!out.empty(), ErrorKind::usage, "empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& p : split(text, ',')) {
        const auto dots = p.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<int>(parse_long(p, "list")));
            continue;
        }
        const long a = parse_long(p.substr(0, dots), "range");
        const long b = parse_long(p.substr(dots + 2), "range");
        require(a <= b, ErrorKind::usage, "range '" + p + "' is empty");
        for (long v = a; v <= b; ++v) out.push_back(static_cast<int>(v));
    }
    require(!out.empty(), ErrorKind::usage, "empty list");
    return out;
}

std::size_t resolve_threads(std::size_t flag) {
    std::size_t n = flag;
    if (const char* env = std::getenv("DISPERSIVE_NPHOTON_THREADS"); env && *env) {
        const long v = parse_long(env, "DISPERSIVE_NPHOTON_THREADS");
        require(v >= 0, ErrorKind::config, "DISPERSIVE_NPHOTON_THREADS must be >= 0");
        n = static_cast<std::size_t>(v);
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

int exit_code(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::iteration_limit:
        case ErrorKind::propagation:
        case ErrorKind::contract_violation:
            return 3;
        default:
            return 2;
    }
}

ModelKind parse_model(const std::string& name) {
    for (auto m : {ModelKind::nR, ModelKind::nJC, ModelKind::full_nR, ModelKind::dispersive, ModelKind::nDicke,
                   ModelKind::multiqubit_dispersive, ModelKind::mmr, ModelKind::mmjc, ModelKind::mm_dispersive})
        if (to_string(m) == name) return m;
    throw Error(ErrorKind::usage, "unknown model '" + name + "'");
}

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::nR: return "nR";
        case ModelKind::nJC: return "nJC";
        case ModelKind::full_nR: return "full_nR";
        case ModelKind::dispersive: return "dispersive";
        case ModelKind::nDicke: return "nDicke";
        case ModelKind::multiqubit_dispersive: return "multiqubit_dispersive";
        case ModelKind::mmr: return "mmR";
        case ModelKind::mmjc: return "mmJC";
        case ModelKind::mm_dispersive: return "mm_dispersive";
    }
    return "?";
}

Regime parse_regime(const std::string& name) {
    if (name == "rwa") return Regime::rwa;
    if (name == "nonrwa") return Regime::nonrwa;
    throw Error(ErrorKind::usage, "regime must be rwa or nonrwa, got '" + name + "'");
}

DynamicsPreset parse_preset(const std::string& name) {
    for (auto p : {DynamicsPreset::bell, DynamicsPreset::plus_coherent_1, DynamicsPreset::plus_coherent_2})
        if (to_string(p) == name) return p;
    throw Error(ErrorKind::usage, "unknown preset '" + name + "'");
}

MomentConvention parse_convention(const std::string& name) {
    if (name == "coherent_exact") return MomentConvention::coherent_exact;
    if (name == "paper_literal") return MomentConvention::paper_literal;
    throw Error(ErrorKind::usage, "convention must be coherent_exact or paper_literal, got '" + name + "'");
}

std::string to_string(MomentConvention c) {
    return c == MomentConvention::coherent_exact ? "coherent_exact" : "paper_literal";
}

void cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
    a.spec.validate();
    require(a.levels >= 1, ErrorKind::usage, "--levels must be >= 1");
    require(!a.filter_nbar || *a.filter_nbar > 0.0, ErrorKind::usage, "--filter-nbar must be positive");
    ojson opts{{"command", "spectrum"},
               {"model", to_string(a.model)},
               {"regime", to_string(a.regime)},
               {"levels", a.levels},
               {"dense_limit", a.dense_limit},
               {"physical_scale", a.physical_scale}};
    opts["sweep"] = a.sweep ? grid_json(*a.sweep) : ojson(nullptr);
    opts["filter_nbar"] = a.filter_nbar ? ojson(*a.filter_nbar) : ojson(nullptr);
    header(out, opts, &a.spec);
    out << "sweep_var,value,label,e_numeric,e_rwa,e_nonrwa,overlap,nbar,terminated,filtered\n";

    const double g0 = a.spec.topology == Topology::multimode ? a.spec.couplings.at(0).g : a.spec.qubits.at(0).g;
    const Grid grid = a.sweep ? *a.sweep : Grid{g0, g0, 1};

    std::vector<std::optional<SpectrumResult>> results;
    std::exception_ptr error;
    const std::size_t ok = run_grid<SpectrumResult>(grid.steps, a.threads, results, error, [&](std::size_t i) {
        const SystemSpec s = with_coupling(a.spec, grid.at(i));
        const SparseOperator h = build_model(s, a.model, a.regime);
        SpectrumResult r;
        if (h.dim() <= a.dense_limit) {
            DenseOptions d;
            d.dense_limit = a.dense_limit;
            r = eigh_dense(h, d);
        } else {
            r = eigs_lowest(h, std::min(h.dim(), std::max<std::size_t>(a.levels, 1)));
        }
        if (i == 0) r = label_by_overlap(std::move(r), h.layout());
        return with_mean_photons(std::move(r));
    });

    std::vector<SpectrumResult> sweep;
    for (std::size_t i = 0; i < ok; ++i) sweep.push_back(std::move(*results[i]));
    TrackOptions topt;
    topt.max_levels = a.levels;
    const auto curves = track_levels(sweep, topt);
    const HilbertLayout layout = a.spec.layout();
    const double sc = a.physical_scale;

    for (std::size_t p = 0; p < ok; ++p) {
        const SystemSpec s = with_coupling(a.spec, grid.at(p));
        for (const auto& c : curves) {
            if (c.terminated_at && *c.terminated_at < p) continue;
            const std::string lead = "g," + num(grid.at(p)) + "," + label_text(layout, c.seed) + ",";
            if (c.terminated_at && *c.terminated_at == p) {
                out << lead << "nan,nan,nan,nan,nan,1,0\n";
                continue;
            }
            const std::size_t e = c.eig_index[p];
            const double nbar = sweep[p].mean_photons[e];
            const auto [er, en] = analytic_pair(s, c.seed);
            const bool filtered = a.filter_nbar && !(nbar < *a.filter_nbar);
            out << lead << num(sc * c.energies[p]) << ',' << (std::isnan(er) ? "" : num(sc * er)) << ','
                << (std::isnan(en) ? "" : num(sc * en)) << ',' << num(c.overlaps[p]) << ',' << num(nbar) << ",0,"
                << (filtered ? 1 : 0) << '\n';
        }
    }
    if (ok < grid.steps) {
        for (const auto& c : curves) {
            if (c.terminated_at) continue;
            out << "g," << num(grid.at(ok)) << ',' << label_text(layout, c.seed) << ",nan,nan,nan,nan,nan,1,0\n";
        }
        out.flush();
        std::rethrow_exception(error);
    }
}

void cmd_dynamics(const DynamicsArgs& a, std::ostream& out) {
    a.spec.validate();
    ojson opts{{"command", "dynamics"}, {"preset", to_string(a.preset)}, {"t_chi", grid_json(a.t_chi)}};
    header(out, opts, &a.spec);
    out << "t_chi,fid_qubit,fid_osc\n";
    const auto ts = a.t_chi.values();
    for (const auto& s : dispersive_fidelity_run(a.spec, a.preset, ts))
        out << num(s.t_chi) << ',' << num(s.fid_qubit) << ',' << num(s.fid_osc) << '\n';
}

void cmd_coeff_table(int nmax, std::ostream& out) {
    require(nmax >= 1, ErrorKind::domain, "--nmax must be >= 1");
    const auto& t = coeff_table(nmax);
    header(out, ojson{{"command", "coeff-table"}, {"nmax", nmax}});
    out << "n,k,cplus,cminus\n";
    for (int n = 1; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k) out << n << ',' << k << ',' << t.cplus(n, k) << ',' << t.cminus(n, k) << '\n';
}

void cmd_levels(const LevelsArgs& a, std::ostream& out) {
    a.spec.validate();
    require(a.spec.topology == Topology::single, ErrorKind::usage, "levels needs a single-topology config");
    ojson opts{{"command", "levels"}, {"jmax", a.jmax}, {"physical_scale", a.physical_scale}};
    opts["sweep"] = a.sweep ? grid_json(*a.sweep) : ojson(nullptr);
    header(out, opts, &a.spec);
    out << "g,qubit,j,e_rwa,e_nonrwa,n_crit\n";
    const double g0 = a.spec.qubits[0].g;
    const Grid grid = a.sweep ? *a.sweep : Grid{g0, g0, 1};
    for (std::size_t i = 0; i < grid.steps; ++i) {
        const auto p = DispersiveParams::from_spec(with_coupling(a.spec, grid.at(i)));
        const double nc = critical_photon_number(p.n, p.g, p.delta);
        for (QubitState q : {QubitState::g, QubitState::e})
            for (std::size_t j = 0; j <= a.jmax; ++j)
                out << num(grid.at(i)) << ',' << (q == QubitState::e ? 'e' : 'g') << ',' << j << ','
                    << num(a.physical_scale * dispersive_level(p, q, j, Regime::rwa)) << ','
                    << num(a.physical_scale * dispersive_level(p, q, j, Regime::nonrwa)) << ','
                    << (std::isinf(nc) ? "inf" : num(nc)) << '\n';
    }
}

void cmd_critical_nph(const CriticalArgs& a, std::ostream& out) {
    ojson opts{{"command", "critical-nph"}, {"n", a.n}, {"delta", a.delta}, {"g", grid_json(a.g)}};
    header(out, opts);
    out << "n,delta,g,n_crit\n";
    for (int n : a.n)
        for (double d : a.delta)
            for (double g : a.g.values()) {
                const double nc = critical_photon_number(n, g, d);
                out << n << ',' << num(d) << ',' << num(g) << ',' << (std::isinf(nc) ? "inf" : num(nc)) << '\n';
            }
}

void cmd_dressed_freq(const DressedArgs& a, std::ostream& out) {
    ojson opts{{"command", "dressed-freq"}, {"n", a.n},         {"g", a.g},
               {"delta", a.delta},          {"alpha", grid_json(a.alpha)}, {"regime", to_string(a.regime)},
               {"physical_scale", a.physical_scale}};
    header(out, opts);
    out << "n,g,alpha,omega_q,dressed_coherent_exact,dressed_paper_literal\n";
    for (int n : a.n)
        for (double g : a.g) {
            const auto p = DispersiveParams::make(n, g, n + a.delta);
            for (double al : a.alpha.values()) {
                const double ce = dressed_qubit_frequency(p, al, MomentConvention::coherent_exact, a.regime);
                const double pl = dressed_qubit_frequency(p, al, MomentConvention::paper_literal, a.regime);
                out << n << ',' << num(g) << ',' << num(al) << ',' << num(a.physical_scale * p.omega_q) << ','
                    << num(a.physical_scale * ce) << ',' << num(a.physical_scale * pl) << '\n';
            }
        }
}

void cmd_eff_2q(const Eff2qArgs& a, std::ostream& out) {
    a.spec.validate();
    ojson opts{{"command", "eff-2q"},
               {"alpha", grid_json(a.alpha)},
               {"convention", to_string(a.convention)},
               {"cross_k0", a.cross_k0},
               {"physical_scale", a.physical_scale}};
    header(out, opts, &a.spec);
    out << "alpha,omega_bar_1,omega_bar_2,g_bar\n";
    for (double al : a.alpha.values()) {
        const auto t = effective_two_qubit_params(a.spec, al, a.convention, a.cross_k0);
        out << num(al) << ',' << num(a.physical_scale * t.omega_bar_1) << ','
            << num(a.physical_scale * t.omega_bar_2) << ',' << num(a.physical_scale * t.g_bar) << '\n';
    }
}

}  // namespace nphoton
