#include "bogo/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bogo {

using nlohmann::ordered_json;

std::map<std::string, double> default_tolerances() {
    return {
        {"identity_rel", 1e-10},       {"symmetry_rel", 1e-13},
        {"ccr_abs", 1e-13},            {"scattering_rel", 1e-8},
        {"residual_rel", 1e-6},        {"bound_ceiling_default", 50.0},
        {"acceleration_ceiling", 1.0}, {"psd_rel", 1e-10},
    };
}

namespace {

void reject_unknown(const ordered_json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: JSON parse failure: ") + e.what());
    }
    reject_unknown(j,
                   {"params", "potential", "pmax", "Mmax", "fock", "grid", "ell_list",
                    "tolerances", "output_dir", "threads"},
                   "top level");
    RunConfig c;
    try {
        if (j.contains("params")) {
            const auto& p = j["params"];
            reject_unknown(p, {"N", "kappa", "ell", "alpha", "beta", "mu"}, "params");
            if (p.contains("N")) c.params.N = p["N"].get<double>();
            if (p.contains("kappa")) c.params.kappa = p["kappa"].get<double>();
            if (p.contains("ell")) c.params.ell = p["ell"].get<double>();
            if (p.contains("alpha")) c.params.alpha = p["alpha"].get<double>();
            if (p.contains("beta")) c.params.beta = p["beta"].get<double>();
            if (p.contains("mu")) c.params.mu = p["mu"].get<double>();
        }
        if (j.contains("potential")) {
            const auto& p = j["potential"];
            reject_unknown(p, {"kind", "V0", "R", "samples"}, "potential");
            std::string kind = p.value("kind", "soft_sphere");
            if (kind == "soft_sphere") {
                c.potential = Potential::soft_sphere(p.value("V0", 2.0), p.value("R", 1.0));
            } else if (kind == "tabulated") {
                std::vector<std::pair<double, double>> samples;
                for (const auto& s : p.at("samples"))
                    samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
                c.potential = Potential::tabulated(std::move(samples));
            } else {
                throw ConfigError("config: unknown potential kind '" + kind + "'");
            }
        }
        if (j.contains("pmax")) c.pmax = j["pmax"].get<double>();
        if (j.contains("Mmax")) c.Mmax = j["Mmax"].get<int>();
        if (j.contains("fock")) {
            const auto& f = j["fock"];
            reject_unknown(f, {"modes_shells", "ncap", "Nparam"}, "fock");
            if (f.contains("modes_shells")) c.fock.modes_shells = f["modes_shells"].get<int>();
            if (f.contains("ncap")) c.fock.ncap = f["ncap"].get<int>();
            if (f.contains("Nparam")) c.fock.Nparam = f["Nparam"].get<double>();
        }
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            reject_unknown(g, {"n_inner", "n_outer", "r_far_factor"}, "grid");
            if (g.contains("n_inner")) c.grid.n_inner = g["n_inner"].get<int>();
            if (g.contains("n_outer")) c.grid.n_outer = g["n_outer"].get<int>();
            if (g.contains("r_far_factor")) c.grid.r_far_factor = g["r_far_factor"].get<double>();
        }
        if (j.contains("ell_list")) c.ell_list = j["ell_list"].get<std::vector<double>>();
        c.tolerances = default_tolerances();
        if (j.contains("tolerances")) {
            auto defaults = default_tolerances();
            for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
                if (!defaults.count(it.key()))
                    throw ConfigError("config: unknown tolerance '" + it.key() + "'");
                c.tolerances[it.key()] = it.value().get<double>();
            }
        }
        if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
        if (j.contains("threads")) c.threads = j["threads"].get<int>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

std::string serialize_config(const RunConfig& c) {
    ordered_json j;
    j["params"] = {{"N", c.params.N},       {"kappa", c.params.kappa}, {"ell", c.params.ell},
                   {"alpha", c.params.alpha}, {"beta", c.params.beta},   {"mu", c.params.mu}};
    if (c.potential.kind() == Potential::Kind::soft_sphere) {
        j["potential"] = {{"kind", "soft_sphere"},
                          {"V0", c.potential.V0()},
                          {"R", c.potential.support_radius()}};
    } else {
        ordered_json samples = ordered_json::array();
        for (const auto& s : c.potential.samples())
            samples.push_back(ordered_json::array({s.first, s.second}));
        j["potential"] = {{"kind", "tabulated"}, {"samples", samples}};
    }
    j["pmax"] = c.pmax;
    j["Mmax"] = c.Mmax;
    j["fock"] = {{"modes_shells", c.fock.modes_shells},
                 {"ncap", c.fock.ncap},
                 {"Nparam", c.fock.Nparam}};
    j["grid"] = {{"n_inner", c.grid.n_inner},
                 {"n_outer", c.grid.n_outer},
                 {"r_far_factor", c.grid.r_far_factor}};
    j["ell_list"] = c.ell_list;
    j["tolerances"] = c.tolerances;
    j["output_dir"] = c.output_dir;
    j["threads"] = c.threads;
    return j.dump(2) + "\n";
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(RunConfig& c, const std::string& key_eq_value) {
    auto eq = key_eq_value.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + key_eq_value + "'");
    std::string key = key_eq_value.substr(0, eq);
    std::string value = key_eq_value.substr(eq + 1);
    // route the override through the JSON form so path handling stays uniform
    ordered_json j = ordered_json::parse(serialize_config(c));
    ordered_json* node = &j;
    std::string rest = key;
    for (;;) {
        auto dot = rest.find('.');
        std::string head = rest.substr(0, dot);
        if (!node->contains(head)) throw ConfigError("--set: unknown key '" + key + "'");
        if (dot == std::string::npos) {
            ordered_json parsed;
            try {
                parsed = ordered_json::parse(value);
            } catch (...) {
                parsed = value;  // bare strings allowed
            }
            (*node)[head] = parsed;
            break;
        }
        node = &(*node)[head];
        rest = rest.substr(dot + 1);
    }
    c = parse_config(j.dump());
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string scattering_cache_key(const RunConfig& c) {
    ordered_json j;
    if (c.potential.kind() == Potential::Kind::soft_sphere) {
        j["potential"] = {{"kind", "soft_sphere"},
                          {"V0", c.potential.V0()},
                          {"R", c.potential.support_radius()}};
    } else {
        ordered_json samples = ordered_json::array();
        for (const auto& s : c.potential.samples())
            samples.push_back(ordered_json::array({s.first, s.second}));
        j["potential"] = {{"kind", "tabulated"}, {"samples", samples}};
    }
    j["N"] = c.params.N;
    j["kappa"] = c.params.kappa;
    j["ell"] = c.params.ell;
    j["grid"] = {{"n_inner", c.grid.n_inner},
                 {"n_outer", c.grid.n_outer},
                 {"r_far_factor", c.grid.r_far_factor}};
    return content_hash(j.dump());
}

}  // namespace bogo
