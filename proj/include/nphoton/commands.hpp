#pragma once

#include "nphoton/analytic.hpp"
#include "nphoton/dynamics.hpp"
#include "nphoton/errors.hpp"
#include "nphoton/models.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nphoton {

inline constexpr int kSchemaVersion = 1;

// from:to:steps, inclusive endpoints; steps = number of points.
struct Grid {
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 1;

    static Grid parse(const std::string& text);
    double at(std::size_t i) const;
    std::vector<double> values() const;
    std::string str() const;
};

std::vector<double> parse_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);  // accepts a..b ranges

// --threads resolution: DISPERSIVE_NPHOTON_THREADS overrides the flag; 0 means hardware count.
std::size_t resolve_threads(std::size_t flag);

// Exit code for an error: 2 config/usage, 3 numerical.
int exit_code(const Error& e);

enum class ModelKind {
    nR, nJC, full_nR, dispersive, nDicke, multiqubit_dispersive, mmr, mmjc, mm_dispersive
};
ModelKind parse_model(const std::string& name);
std::string to_string(ModelKind m);
Regime parse_regime(const std::string& name);
DynamicsPreset parse_preset(const std::string& name);
MomentConvention parse_convention(const std::string& name);
std::string to_string(MomentConvention c);

struct SpectrumArgs {
    SystemSpec spec;
    ModelKind model = ModelKind::nR;
    Regime regime = Regime::nonrwa;
    std::optional<Grid> sweep;           // coupling g applied to every qubit/coupling
    std::optional<double> filter_nbar;
    std::size_t levels = 8;              // tracked curves; also the Lanczos count above dense_limit
    std::size_t dense_limit = 4096;
    std::size_t threads = 1;
    double physical_scale = 1.0;
};
void cmd_spectrum(const SpectrumArgs& a, std::ostream& out);

struct DynamicsArgs {
    SystemSpec spec;
    DynamicsPreset preset = DynamicsPreset::bell;
    Grid t_chi{0.0, 2.0, 41};
};
void cmd_dynamics(const DynamicsArgs& a, std::ostream& out);

void cmd_coeff_table(int nmax, std::ostream& out);

struct LevelsArgs {
    SystemSpec spec;
    std::size_t jmax = 10;
    std::optional<Grid> sweep;
    double physical_scale = 1.0;
};
void cmd_levels(const LevelsArgs& a, std::ostream& out);

struct CriticalArgs {
    std::vector<int> n{1, 2, 3, 4};
    std::vector<double> delta{2.0, 6.0};
    Grid g{0.005, 0.1, 20};
};
void cmd_critical_nph(const CriticalArgs& a, std::ostream& out);

struct DressedArgs {
    std::vector<int> n{1, 2, 3};
    std::vector<double> g{0.02, 0.03};
    double delta = 1.0;  // ω_q = nω_o + Δ
    Grid alpha{0.0, 2.0, 41};
    Regime regime = Regime::rwa;
    double physical_scale = 1.0;
};
void cmd_dressed_freq(const DressedArgs& a, std::ostream& out);

struct Eff2qArgs {
    SystemSpec spec;
    Grid alpha{0.0, 2.0, 21};
    MomentConvention convention = MomentConvention::coherent_exact;
    bool cross_k0 = true;
    double physical_scale = 1.0;
};
void cmd_eff_2q(const Eff2qArgs& a, std::ostream& out);

}  // namespace nphoton
