#ifndef BOGO_RUN_CONFIG_HPP
#define BOGO_RUN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bogo/model_params.hpp"
#include "bogo/potential.hpp"
#include "bogo/scattering.hpp"

namespace bogo {

inline constexpr const char* kToolVersion = "0.3.0";

struct FockConfig {
    int modes_shells = 1;
    int ncap = 4;
    double Nparam = 100.0;
};

struct RunConfig {
    ModelParams params;
    Potential potential = Potential::soft_sphere(2.0, 1.0);
    double pmax = 40.0 * M_PI;
    int Mmax = 256;
    FockConfig fock;
    GridSpec grid;
    std::vector<double> ell_list = {0.1, 0.25, 0.4};
    std::map<std::string, double> tolerances;  // merged over defaults
    std::string output_dir = "out";
    int threads = 1;
};

std::map<std::string, double> default_tolerances();

// strict parse: unknown keys are rejected; parse(serialize(c)) == c
RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& c);
RunConfig load_config_file(const std::string& path);

// dotted-path override, e.g. "params.kappa=0.01" or "fock.ncap=3"
void apply_override(RunConfig& c, const std::string& key_eq_value);

// FNV-1a over bytes, hex string
std::string content_hash(const std::string& bytes);
// hash of the scattering-relevant inputs (potential, N, kappa, ell, grid)
std::string scattering_cache_key(const RunConfig& c);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bogo

#endif
