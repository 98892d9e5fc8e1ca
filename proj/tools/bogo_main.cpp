#include <CLI11.hpp>
#include <iostream>

#include <json.hpp>

#include "bogo/pipeline.hpp"

namespace {

// exit codes: 0 ok, 2 numerical failure, 3 config error, 4 resource cap
int classify(const std::exception& e) {
    std::string msg = e.what();
    if (dynamic_cast<const bogo::ConfigError*>(&e)) return 3;
    if (msg.find("exceeds configured") != std::string::npos ||
        msg.find("point count exceeds") != std::string::npos)
        return 4;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return 3;
    return 2;
}

void emit_error(int code, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = {{"code", code}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dilute Bose gas spectral toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    int threads = 0;
    app.add_option("--config", config_path, "run configuration JSON");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--set", overrides, "override config values, dotted path key=value");
    app.add_option("--threads", threads, "worker threads for shell-parallel stages");

    auto* c_scatter = app.add_subcommand("scatter", "solve the radial scattering problems");
    auto* c_coeffs = app.add_subcommand("coeffs", "build the momentum coefficient table");
    auto* c_energy = app.add_subcommand("energy", "ground-state energy expansion");
    auto* c_elambda = app.add_subcommand("elambda", "box lattice constants");
    auto* c_enum = app.add_subcommand("enumerate", "excitation levels below threshold");
    auto* c_fock = app.add_subcommand("fock-verify", "truncated Fock-space operator checks");
    auto* c_all = app.add_subcommand("all", "run every stage");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_error(3, e.what());
        return 3;
    }

    try {
        bogo::RunConfig cfg;
        if (!config_path.empty()) cfg = bogo::load_config_file(config_path);
        for (const auto& kv : overrides) bogo::apply_override(cfg, kv);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (threads > 0) cfg.threads = threads;

        bogo::Pipeline pipe(cfg);
        if (c_scatter->parsed()) pipe.cmd_scatter();
        if (c_coeffs->parsed()) pipe.cmd_coeffs();
        if (c_energy->parsed()) pipe.cmd_energy();
        if (c_elambda->parsed()) pipe.cmd_elambda();
        if (c_enum->parsed()) pipe.cmd_enumerate();
        if (c_fock->parsed()) pipe.cmd_fock();
        if (c_all->parsed()) pipe.cmd_all();
        pipe.write_manifest();
        return 0;
    } catch (const std::exception& e) {
        int code = classify(e);
        emit_error(code, e.what());
        return code;
    }
}
