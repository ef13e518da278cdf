#include <doctest.h>

#include "nphoton/commands.hpp"
#include "nphoton/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace nphoton;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("grid and list parsing") {
    const auto g = Grid::parse("0:0.1:11");
    CHECK(g.steps == 11);
    CHECK(g.at(10) == 0.1);
    CHECK(g.at(5) == doctest::Approx(0.05));
    CHECK_THROWS_AS(Grid::parse("0:1"), Error);
    CHECK_THROWS_AS(Grid::parse("0:1:0"), Error);
    CHECK_THROWS_AS(Grid::parse("0:x:3"), Error);
    CHECK(parse_int_list("1..4") == std::vector<int>{1, 2, 3, 4});
    CHECK(parse_int_list("1,3..4") == std::vector<int>{1, 3, 4});
    CHECK(parse_list("2,6") == std::vector<double>{2.0, 6.0});
}

TEST_CASE("coeff-table output matches the golden file") {
    std::ostringstream os;
    cmd_coeff_table(4, os);
    CHECK(os.str() == slurp(std::string(NPHOTON_GOLDEN_DIR) + "/coeff_table_nmax4.csv"));
}

TEST_CASE("thread resolution honours the environment") {
    setenv("DISPERSIVE_NPHOTON_THREADS", "3", 1);
    CHECK(resolve_threads(1) == 3);
    setenv("DISPERSIVE_NPHOTON_THREADS", "bogus", 1);
    CHECK_THROWS_AS(resolve_threads(1), Error);
    unsetenv("DISPERSIVE_NPHOTON_THREADS");
    CHECK(resolve_threads(2) == 2);
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("exit codes") {
    CHECK(exit_code(Error(ErrorKind::config, "x")) == 2);
    CHECK(exit_code(Error(ErrorKind::usage, "x")) == 2);
    CHECK(exit_code(Error(ErrorKind::iteration_limit, "x")) == 3);
    CHECK(exit_code(Error(ErrorKind::propagation, "x")) == 3);
}

TEST_CASE("spectrum output is deterministic across thread counts and carries provenance") {
    SpectrumArgs a;
    a.spec = SystemSpec::single(8.0, 2, 0.02, 60);
    a.sweep = Grid::parse("0:0.05:6");
    a.levels = 5;
    a.filter_nbar = 3.5;
    std::ostringstream one, four;
    a.threads = 1;
    cmd_spectrum(a, one);
    a.threads = 4;
    cmd_spectrum(a, four);
    CHECK(one.str() == four.str());

    const auto ls = lines(one.str());
    REQUIRE(ls.size() == 4 + 6 * 5);
    CHECK(ls[0] == "# schema_version: 1");
    const std::string sys = ls[2].substr(std::string("# system: ").size());
    CHECK(spec_to_json(spec_from_string(sys)).dump() == sys);
    CHECK(ls[3] == "sweep_var,value,label,e_numeric,e_rwa,e_nonrwa,overlap,nbar,terminated,filtered");
    CHECK(ls[4].rfind("g,0,g|0,", 0) == 0);
    // grid-major, label-minor; level g|4 has nbar ≈ 4 and is filtered
    CHECK(ls[8].rfind("g,0,g|4,", 0) == 0);
    CHECK(ls[8].back() == '1');
    CHECK(ls[4].back() == '0');
}

TEST_CASE("physical scale multiplies energy columns only") {
    LevelsArgs a;
    a.spec = SystemSpec::single(8.0, 2, 0.02, 60);
    a.jmax = 2;
    std::ostringstream x, y;
    cmd_levels(a, x);
    a.physical_scale = 2.0;
    cmd_levels(a, y);
    const auto lx = lines(x.str()), ly = lines(y.str());
    REQUIRE(lx.size() == ly.size());
    CHECK(lx.back().rfind("0.02,e,2,", 0) == 0);
    CHECK(ly.back().rfind("0.02,e,2,", 0) == 0);
    CHECK(lx.back() != ly.back());
}

TEST_CASE("critical and dressed-frequency tables") {
    CriticalArgs c;
    c.n = {2};
    c.delta = {6.0};
    c.g = Grid::parse("0.02:0.02:1");
    std::ostringstream os;
    cmd_critical_nph(c, os);
    CHECK(lines(os.str()).back() == "2,6,0.02,300");

    DressedArgs d;
    d.n = {1};
    d.g = {0.02};
    d.alpha = Grid::parse("0:0:1");
    std::ostringstream ds;
    cmd_dressed_freq(d, ds);
    // ω_q = 2, χ = 4e-4: dressed = 2 + χ at α = 0 in both conventions
    CHECK(lines(ds.str()).back() == "1,0.02,0,2,2.0004,2.0004");
}

TEST_CASE("eff-2q requires two qubits") {
    Eff2qArgs a;
    a.spec = SystemSpec::single(8.0, 2, 0.02, 60);
    std::ostringstream os;
    CHECK_THROWS_AS(cmd_eff_2q(a, os), Error);
}
