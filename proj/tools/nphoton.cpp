#include "nphoton/commands.hpp"
#include "nphoton/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

using namespace nphoton;

namespace {

// Writes to --out when given, stdout otherwise.
int run(const std::string& out_path, const std::function<void(std::ostream&)>& body) {
    try {
        if (out_path.empty() || out_path == "-") {
            body(std::cout);
        } else {
            std::ofstream f(out_path);
            if (!f) {
                std::cerr << "error[usage]: cannot open " << out_path << " for writing\n";
                return 2;
            }
            body(f);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiphoton qubit-oscillator dispersive models"};
    app.require_subcommand(1);
    std::string out;
    std::function<int()> action;

    {
        auto* c = app.add_subcommand("spectrum", "Tracked numerical spectrum with analytic comparison");
        auto cfg = std::make_shared<std::string>();
        auto model = std::make_shared<std::string>("nR");
        auto regime = std::make_shared<std::string>("nonrwa");
        auto sweep = std::make_shared<std::string>();
        auto nbar = std::make_shared<double>(0.0);
        auto a = std::make_shared<SpectrumArgs>();
        auto threads = std::make_shared<std::size_t>(0);
        c->add_option("config", *cfg, "System JSON")->required();
        c->add_option("--model", *model, "nR|nJC|full_nR|dispersive|nDicke|multiqubit_dispersive|mmR|mmJC|mm_dispersive");
        c->add_option("--regime", *regime, "rwa|nonrwa");
        c->add_option("--sweep", *sweep, "g:from:to:steps");
        auto* fo = c->add_option("--filter-nbar", *nbar, "Flag levels with mean photon number >= this");
        c->add_option("--levels", a->levels, "Tracked level count");
        c->add_option("--dense-limit", a->dense_limit, "Largest dimension solved densely");
        c->add_option("--threads", *threads, "Worker threads (0 = hardware count)");
        c->add_option("--physical-scale", a->physical_scale, "Multiplier for energy columns");
        c->add_option("--out", out, "Output CSV (default stdout)");
        c->callback([=, &action, &out] {
            action = [=, &out] {
                return run(out, [&](std::ostream& os) {
                    a->spec = load_spec(*cfg);
                    a->model = parse_model(*model);
                    a->regime = parse_regime(*regime);
                    if (!sweep->empty()) {
                        const auto colon = sweep->find(':');
                        require(colon != std::string::npos && sweep->substr(0, colon) == "g", ErrorKind::usage,
                                "--sweep must be g:from:to:steps");
                        a->sweep = Grid::parse(sweep->substr(colon + 1));
                    }
                    if (fo->count()) a->filter_nbar = *nbar;
                    a->threads = resolve_threads(*threads);
                    cmd_spectrum(*a, os);
                });
            };
        });
    }
    {
        auto* c = app.add_subcommand("dynamics", "Exact vs dispersive subsystem fidelities");
        auto cfg = std::make_shared<std::string>();
        auto preset = std::make_shared<std::string>("bell");
        auto grid = std::make_shared<std::string>("0:2:41");
        c->add_option("config", *cfg, "System JSON")->required();
        c->add_option("--preset", *preset, "bell|plus_coherent_1|plus_coherent_2");
        c->add_option("--tchi", *grid, "from:to:steps in units of 1/chi");
        c->add_option("--out", out, "Output CSV (default stdout)");
        c->callback([=, &action, &out] {
            action = [=, &out] {
                return run(out, [&](std::ostream& os) {
                    DynamicsArgs a;
                    a.spec = load_spec(*cfg);
                    a.preset = parse_preset(*preset);
                    a.t_chi = Grid::parse(*grid);
                    cmd_dynamics(a, os);
                });
            };
        });
    }
    {
        auto* c = app.add_subcommand("coeff-table", "Commutator coefficient table");
        auto nmax = std::make_shared<int>(4);
        c->add_option("--nmax", *nmax, "Largest n");
        c->add_option("--out", out, "Output CSV (default stdout)");
        c->callback([=, &action, &out] {
            action = [=, &out] { return run(out, [&](std::ostream& os) { cmd_coeff_table(*nmax, os); }); };
        });
    }
    {
        auto* c = app.add_subcommand("levels", "Analytic dispersive levels");
        auto cfg = std::make_shared<std::string>();
        auto sweep = std::make_shared<std::string>();
        auto a = std::make_shared<LevelsArgs>();
        c->add_option("config", *cfg, "System JSON")->required();
        c->add_option("--jmax", a->jmax, "Largest photon number");
        c->add_option("--sweep", *sweep, "g from:to:steps");
        c->add_option("--physical-scale", a->physical_scale, "Multiplier for energy columns");
        c->add_option("--out", out, "Output CSV (default stdout)");
        c->callback([=, &action, &out] {
            action = [=, &out] {
                return run(out, [&](std::ostream& os) {
                    a->spec = load_spec(*cfg);
                    if (!sweep->empty()) a->sweep = Grid::parse(*sweep);
                    cmd_levels(*a, os);
                });
            };
        });
    }
    {
        auto* c = app.add_subcommand("critical-nph", "Critical photon number grid");
        auto n = std::make_shared<std::string>("1..4");
        auto delta = std::make_shared<std::string>("2,6");
        auto g = std::make_shared<std::string>("0.005:0.1:20");
        c->add_option("--n", *n, "Orders, e.g. 1..4 or 1,3");
        c->add_option("--delta", *delta, "Detunings");
        c->add_option("--g", *g, "Coupling grid from:to:steps");
        c->add_option("--out", out, "Output CSV (default stdout)");
        c->callback([=, &action, &out] {
            action = [=, &out] {
                return run(out, [&](std::ostream& os) {
                    CriticalArgs a;
                    a.n = parse_int_list(*n);
                    a.delta = parse_list(*delta);
                    a.g = Grid::parse(*g);
                    cmd_critical_nph(a, os);
                });
            };
        });
    }
    {
        auto* c = app.add_subcommand("dressed-freq", "Dressed qubit frequency vs coherent amplitude");
        auto n = std::make_shared<std::string>("1,2,3");
        auto g = std::make_shared<std::string>("0.02,0.03");
        auto alpha = std::make_shared<std::string>("0:2:41");
        auto regime = std::make_shared<std::string>("rwa");
        auto a = std::make_shared<DressedArgs>();
        c->add_option("--n", *n, "Orders");
        c->add_option("--g", *g, "Couplings");
        c->add_option("--delta", a->delta, "Detuning: omega_q = n + delta");
        c->add_option("--alpha", *alpha, "|alpha| grid from:to:steps");
        c->add_option("--regime", *regime, "rwa|nonrwa");
        c->add_option("--physical-scale", a->physical_scale, "Multiplier for frequency columns");
        c->add_option("--out", out, "Output CSV (default stdout)");
        c->callback([=, &action, &out] {
            action = [=, &out] {
                return run(out, [&](std::ostream& os) {
                    a->n = parse_int_list(*n);
                    a->g = parse_list(*g);
                    a->alpha = Grid::parse(*alpha);
                    a->regime = parse_regime(*regime);
                    cmd_dressed_freq(*a, os);
                });
            };
        });
    }
    {
        auto* c = app.add_subcommand("eff-2q", "Effective two-qubit parameters vs coherent amplitude");
        auto cfg = std::make_shared<std::string>();
        auto alpha = std::make_shared<std::string>("0:2:21");
        auto conv = std::make_shared<std::string>("coherent_exact");
        auto no_k0 = std::make_shared<bool>(false);
        auto a = std::make_shared<Eff2qArgs>();
        c->add_option("config", *cfg, "System JSON (two qubits, one oscillator)")->required();
        c->add_option("--alpha", *alpha, "|alpha| grid from:to:steps");
        c->add_option("--convention", *conv, "coherent_exact|paper_literal");
        c->add_flag("--no-cross-k0", *no_k0, "Drop the k = 0 cross-coupling term");
        c->add_option("--physical-scale", a->physical_scale, "Multiplier for frequency columns");
        c->add_option("--out", out, "Output CSV (default stdout)");
        c->callback([=, &action, &out] {
            action = [=, &out] {
                return run(out, [&](std::ostream& os) {
                    a->spec = load_spec(*cfg);
                    a->alpha = Grid::parse(*alpha);
                    a->convention = parse_convention(*conv);
                    a->cross_k0 = !*no_k0;
                    cmd_eff_2q(*a, os);
                });
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return action ? action() : 2;
}
