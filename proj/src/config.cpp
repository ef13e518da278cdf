#include "nphoton/config.hpp"

#include "nphoton/errors.hpp"

#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>

namespace nphoton {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string to_string(Topology t) {
    switch (t) {
        case Topology::single: return "single";
        case Topology::multiqubit: return "multiqubit";
        case Topology::multimode: return "multimode";
    }
    return "?";
}

std::string to_string(StabilizerForm f) {
    return f == StabilizerForm::number_power ? "number_power" : "full_position_power";
}

std::string to_string(Regime r) { return r == Regime::rwa ? "rwa" : "nonrwa"; }

ojson spec_to_json(const SystemSpec& spec) {
    ojson j;
    j["qubits"] = ojson::array();
    for (const auto& q : spec.qubits) j["qubits"].push_back({{"omega_q", q.omega_q}, {"n", q.n}, {"g", q.g}});
    j["oscillators"] = ojson::array();
    for (const auto& o : spec.oscillators) j["oscillators"].push_back({{"omega", o.omega}, {"trunc", o.trunc}});
    j["topology"] = to_string(spec.topology);
    j["couplings"] = ojson::array();
    for (const auto& c : spec.couplings)
        j["couplings"].push_back({{"qubit", c.qubit}, {"oscillator", c.oscillator}, {"n", c.n}, {"g", c.g}});
    if (spec.stabilizer)
        j["stabilizer"] = {{"eta", spec.stabilizer->eta},
                           {"form", to_string(spec.stabilizer->form)},
                           {"m", spec.stabilizer->m}};
    return j;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::config, path + ": " + msg);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) fail(path + "." + it.key(), "unknown key");
    }
}

double num(const json& obj, const std::string& path, const char* key, std::optional<double> dflt = {}) {
    if (!obj.contains(key)) {
        if (dflt) return *dflt;
        fail(path + "." + key, "missing required number");
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

long long integer(const json& obj, const std::string& path, const char* key, std::optional<long long> dflt = {}) {
    if (!obj.contains(key)) {
        if (dflt) return *dflt;
        fail(path + "." + key, "missing required integer");
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<long long>();
}

const json& array_at(const json& obj, const std::string& path, const char* key, bool required) {
    static const json empty = json::array();
    if (!obj.contains(key)) {
        if (required) fail(path + "." + key, "missing required array");
        return empty;
    }
    const auto& v = obj.at(key);
    if (!v.is_array()) fail(path + "." + key, "expected an array");
    return v;
}

std::size_t nonneg(long long v, const std::string& path) {
    if (v < 0) fail(path, "must be non-negative");
    return static_cast<std::size_t>(v);
}

}  // namespace

SystemSpec spec_from_json(const json& doc) {
    only_keys(doc, "$", {"qubits", "oscillators", "topology", "couplings", "stabilizer"});
    SystemSpec s;
    const auto& qs = array_at(doc, "$", "qubits", true);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const std::string p = "$.qubits[" + std::to_string(i) + "]";
        only_keys(qs[i], p, {"omega_q", "n", "g"});
        QubitSpec q;
        q.omega_q = num(qs[i], p, "omega_q");
        q.n = static_cast<int>(integer(qs[i], p, "n", 1));
        q.g = num(qs[i], p, "g", 0.0);
        s.qubits.push_back(q);
    }
    const auto& os = array_at(doc, "$", "oscillators", true);
    for (std::size_t i = 0; i < os.size(); ++i) {
        const std::string p = "$.oscillators[" + std::to_string(i) + "]";
        only_keys(os[i], p, {"omega", "trunc"});
        OscillatorSpec o;
        o.omega = num(os[i], p, "omega", 1.0);
        o.trunc = nonneg(integer(os[i], p, "trunc"), p + ".trunc");
        s.oscillators.push_back(o);
    }
    if (doc.contains("topology")) {
        const auto& t = doc.at("topology");
        if (!t.is_string()) fail("$.topology", "expected a string");
        const auto name = t.get<std::string>();
        if (name == "single") s.topology = Topology::single;
        else if (name == "multiqubit") s.topology = Topology::multiqubit;
        else if (name == "multimode") s.topology = Topology::multimode;
        else fail("$.topology", "expected single|multiqubit|multimode, got '" + name + "'");
    } else {
        s.topology = s.qubits.size() > 1 ? Topology::multiqubit
                     : s.oscillators.size() > 1 ? Topology::multimode
                                                : Topology::single;
    }
    const auto& cs = array_at(doc, "$", "couplings", false);
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string p = "$.couplings[" + std::to_string(i) + "]";
        only_keys(cs[i], p, {"qubit", "oscillator", "n", "g"});
        Coupling c;
        c.qubit = nonneg(integer(cs[i], p, "qubit", 0), p + ".qubit");
        c.oscillator = nonneg(integer(cs[i], p, "oscillator"), p + ".oscillator");
        c.n = static_cast<int>(integer(cs[i], p, "n", 1));
        c.g = num(cs[i], p, "g", 0.0);
        s.couplings.push_back(c);
    }
    if (doc.contains("stabilizer") && !doc.at("stabilizer").is_null()) {
        const auto& st = doc.at("stabilizer");
        only_keys(st, "$.stabilizer", {"eta", "form", "m"});
        StabilizerSpec spec;
        spec.eta = num(st, "$.stabilizer", "eta", 0.02);
        if (st.contains("form")) {
            if (!st.at("form").is_string()) fail("$.stabilizer.form", "expected a string");
            const auto f = st.at("form").get<std::string>();
            if (f == "number_power") spec.form = StabilizerForm::number_power;
            else if (f == "full_position_power") spec.form = StabilizerForm::full_position_power;
            else fail("$.stabilizer.form", "expected number_power|full_position_power");
        }
        const long long m = integer(st, "$.stabilizer", "m", 0);
        if (m < 0) fail("$.stabilizer.m", "must be non-negative");
        spec.m = static_cast<int>(m);
        s.stabilizer = spec;
    }
    s.validate();
    return s;
}

SystemSpec spec_from_string(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::config, std::string("malformed JSON: ") + e.what());
    }
    return spec_from_json(doc);
}

SystemSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return spec_from_string(ss.str());
}

}  // namespace nphoton
