#include "bogo/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "bogo/coefficients.hpp"
#include "bogo/excitations.hpp"
#include "bogo/fock.hpp"
#include "bogo/lattice.hpp"
#include "bogo/lattice_sums.hpp"

namespace bogo {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json params_json(const ModelParams& p) {
    return {{"N", p.N},       {"kappa", p.kappa}, {"ell", p.ell},
            {"alpha", p.alpha}, {"beta", p.beta},   {"mu", p.mu}};
}

ordered_json potential_json(const Potential& pot) {
    if (pot.kind() == Potential::Kind::soft_sphere)
        return {{"kind", "soft_sphere"}, {"V0", pot.V0()}, {"R", pot.support_radius()}};
    ordered_json samples = ordered_json::array();
    for (const auto& s : pot.samples()) samples.push_back(ordered_json::array({s.first, s.second}));
    return {{"kind", "tabulated"}, {"samples", samples}};
}

ordered_json validity_json(const RunConfig& c) {
    return {{"basic", c.params.basic_valid()},
            {"exponent_window", c.params.exponent_window_valid()},
            {"strong_regime", c.params.strong_regime_valid()},
            {"ball_contains_support",
             c.params.ball_contains_support(c.potential.support_radius())}};
}

ordered_json sumresult_json(const SumResult& r) {
    ordered_json diag = ordered_json::array();
    for (const auto& [m, v] : r.diagnostics) diag.push_back(ordered_json::array({m, v}));
    return {{"value", r.value},
            {"tail_estimate", r.tail_estimate},
            {"cutoff", r.cutoff},
            {"extrapolation_order", r.extrapolation_order},
            {"diagnostics", diag}};
}

ordered_json solution_json(const ScatteringSolution& sol, const RunConfig& cfg) {
    ordered_json grid = ordered_json::array();
    for (std::size_t i = 0; i < sol.r_inner.size(); ++i)
        grid.push_back({{"r", sol.r_inner[i]}, {"f", sol.f_inner[i]}});
    for (std::size_t j = 1; j < sol.r_outer.size(); ++j)
        grid.push_back({{"r", sol.r_outer[j]}, {"f", sol.f_outer_at(sol.r_outer[j])}});
    ordered_json j;
    j["params"] = params_json(cfg.params);
    j["potential"] = potential_json(cfg.potential);
    j["a0"] = sol.a0;
    j["lambda_ell"] = sol.lambda;
    j["Rb"] = sol.Rb;
    j["grid"] = grid;
    j["solver_state"] = {{"uR", sol.uR},
                         {"duR", sol.duR},
                         {"scaleA", sol.scaleA},
                         {"support_R", sol.support_R},
                         {"n_inner", sol.grid.n_inner},
                         {"n_outer", sol.grid.n_outer},
                         {"r_far_factor", sol.grid.r_far_factor}};
    j["validity"] = validity_json(cfg);
    return j;
}

ScatteringSolution solution_from_json(const ordered_json& j, const RunConfig& cfg) {
    ScatteringSolution sol;
    sol.N = cfg.params.N;
    sol.kappa = cfg.params.kappa;
    sol.ell = cfg.params.ell;
    sol.a0 = j.at("a0").get<double>();
    sol.lambda = j.at("lambda_ell").get<double>();
    sol.Rb = j.at("Rb").get<double>();
    const auto& st = j.at("solver_state");
    sol.uR = st.at("uR").get<double>();
    sol.duR = st.at("duR").get<double>();
    sol.scaleA = st.at("scaleA").get<double>();
    sol.support_R = st.at("support_R").get<double>();
    sol.grid.n_inner = st.at("n_inner").get<int>();
    sol.grid.n_outer = st.at("n_outer").get<int>();
    sol.grid.r_far_factor = st.at("r_far_factor").get<double>();
    const auto& grid = j.at("grid");
    const std::size_t ni = static_cast<std::size_t>(sol.grid.n_inner) + 1;
    sol.r_inner.reserve(ni);
    sol.f_inner.reserve(ni);
    for (std::size_t i = 0; i < ni; ++i) {
        sol.r_inner.push_back(grid[i].at("r").get<double>());
        sol.f_inner.push_back(grid[i].at("f").get<double>());
    }
    sol.r_outer.reserve(static_cast<std::size_t>(sol.grid.n_outer) + 1);
    sol.r_outer.push_back(sol.support_R);
    for (std::size_t i = ni; i < grid.size(); ++i)
        sol.r_outer.push_back(grid[i].at("r").get<double>());
    return sol;
}

std::string timestamp_utc() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

}  // namespace

Pipeline::Pipeline(RunConfig config) : cfg_(std::move(config)) {
    fs::create_directories(cfg_.output_dir);
}

std::string Pipeline::cache_dir() const {
    if (const char* env = std::getenv("BOGO_CACHE_DIR")) return env;
    return (fs::path(cfg_.output_dir) / "cache").string();
}

std::string Pipeline::out_path(const std::string& name) const {
    return (fs::path(cfg_.output_dir) / name).string();
}

void Pipeline::write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
}

void Pipeline::ensure_solution(StageResult* stage) {
    if (have_sol_) return;
    const std::string key = scattering_cache_key(cfg_);
    const fs::path cached = fs::path(cache_dir()) / ("scattering-" + key + ".json");
    if (fs::exists(cached)) {
        std::ifstream in(cached);
        std::stringstream ss;
        ss << in.rdbuf();
        sol_ = solution_from_json(ordered_json::parse(ss.str()), cfg_);
        have_sol_ = true;
        if (stage) stage->from_cache = true;
        return;
    }
    sol_ = solve_neumann(cfg_.potential, cfg_.params, cfg_.grid);
    have_sol_ = true;
    fs::create_directories(cached.parent_path());
    write_file(cached.string(), solution_json(sol_, cfg_).dump(2) + "\n");
}

StageResult Pipeline::cmd_scatter() {
    StageResult res{"scatter", {}, false};
    ensure_solution(&res);
    auto j = solution_json(sol_, cfg_);
    // expansion residuals of the Neumann eigenvalue and the kernel moments
    if (!sol_.trivial()) {
        RadialKernels kern(sol_, cfg_.potential);
        double a0 = sol_.a0, Rb = sol_.Rb;
        double lam_res = std::fabs(sol_.lambda * Rb * Rb * Rb / (3.0 * a0) - 1.0 - 1.8 * a0 / Rb);
        double ivf = kern.conv_Vf(0.0);
        double ivf_res = std::fabs(ivf - 8.0 * M_PI * a0 * (1.0 + 1.5 * a0 / Rb));
        double iw = integral_w(sol_);
        double iw_res = std::fabs(iw / (Rb * Rb) - 0.4 * M_PI * a0);
        j["residuals"] = {{"lambda_expansion", lam_res},
                          {"integral_Vf", ivf_res},
                          {"integral_w", iw_res}};
        std::cout << "a0 = " << a0 << "\nlambda_ell = " << sol_.lambda
                  << "\nlambda expansion residual = " << lam_res
                  << "\nintegral_Vf residual = " << ivf_res
                  << "\nintegral_w residual = " << iw_res << "\n";
    } else {
        std::cout << "a0 = 0 (warning: trivial potential)\n";
        j["residuals"] = {{"lambda_expansion", 0.0}, {"integral_Vf", 0.0}, {"integral_w", 0.0}};
    }
    const std::string path = out_path("scattering.json");
    write_file(path, j.dump(2) + "\n");
    res.files.push_back(path);
    done_.push_back(res);
    return res;
}

StageResult Pipeline::cmd_coeffs() {
    StageResult res{"coeffs", {}, false};
    ensure_solution(&res);
    auto lattice = MomentumLattice::build(cfg_.pmax);
    auto table = build_coefficients(sol_, cfg_.potential, cfg_.params, lattice, false,
                                    cfg_.threads);
    const std::string csv_path = out_path("coefficients.csv");
    write_file(csv_path, coefficients_csv(table));
    auto rep = bound_report(table);
    ordered_json jb;
    jb["validity"] = validity_json(cfg_);
    jb["pmax"] = cfg_.pmax;
    jb["a0"] = table.a0;
    ordered_json entries = ordered_json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"name", e.name},
                           {"value", e.value},
                           {"ceiling", e.ceiling},
                           {"is_lower_bound", e.is_lower_bound},
                           {"pass", e.pass}});
    jb["entries"] = entries;
    jb["all_pass"] = rep.all_pass;
    jb["tau_norms"] = {{"inf", table.tau_inf},
                       {"l1", table.tau_l1},
                       {"l2_sq", table.tau_l2_sq},
                       {"h1_sq", table.tau_h1_sq}};
    const std::string jb_path = out_path("bounds.json");
    write_file(jb_path, jb.dump(2) + "\n");
    res.files = {csv_path, jb_path};
    done_.push_back(res);
    return res;
}

StageResult Pipeline::cmd_energy() {
    StageResult res{"energy", {}, false};
    ensure_solution(&res);
    auto e = ground_state_energy(sol_.a0, cfg_.params.N, cfg_.params.kappa, cfg_.pmax, cfg_.Mmax);
    ordered_json j;
    j["validity"] = validity_json(cfg_);
    j["a0"] = sol_.a0;
    j["mean_field"] = e.mean_field;
    j["elambda_term"] = e.elambda_term;
    j["e_bog"] = e.e_bog;
    j["total"] = e.total;
    j["elambda"] = sumresult_json(e.elambda);
    j["ebog"] = sumresult_json(e.ebog);
    const std::string path = out_path("energy.json");
    write_file(path, j.dump(2) + "\n");
    res.files.push_back(path);
    done_.push_back(res);
    return res;
}

StageResult Pipeline::cmd_elambda() {
    StageResult res{"elambda", {}, false};
    auto el = e_lambda(cfg_.Mmax);
    ordered_json j;
    j["validity"] = validity_json(cfg_);
    j["e_lambda"] = sumresult_json(el);
    ordered_json table = ordered_json::array();
    for (double ell : cfg_.ell_list) {
        auto br = i_ell(ell, cfg_.Mmax, IellForm::bracket);
        auto co = i_ell(ell, cfg_.Mmax, IellForm::cosine);
        table.push_back({{"ell", ell},
                         {"bracket", sumresult_json(br)},
                         {"cosine", sumresult_json(co)},
                         {"identity_6pi_gap", std::fabs(6.0 * M_PI * br.value - el.value)}});
    }
    j["i_ell"] = table;
    const std::string path = out_path("elambda.json");
    write_file(path, j.dump(2) + "\n");
    res.files.push_back(path);
    done_.push_back(res);
    return res;
}

StageResult Pipeline::cmd_enumerate() {
    StageResult res{"enumerate", {}, false};
    ensure_solution(&res);
    auto list = enumerate_excitations(sol_.a0, cfg_.params.N, cfg_.params.kappa, cfg_.params.mu,
                                      100000);
    const std::string path = out_path("levels.csv");
    write_file(path, excitations_csv(list));
    res.files.push_back(path);
    done_.push_back(res);
    return res;
}

StageResult Pipeline::cmd_fock() {
    StageResult res{"fock-verify", {}, false};
    ensure_solution(&res);
    auto modes = FockBasis::shell_modes(cfg_.fock.modes_shells);
    FockBasis basis(modes, cfg_.fock.ncap, cfg_.fock.Nparam);
    ordered_json j;
    j["validity"] = validity_json(cfg_);
    j["basis_spec"] = {{"modes", static_cast<int>(basis.modes().size())},
                       {"ncap", basis.ncap()},
                       {"Nparam", basis.Nparam()},
                       {"dimension", basis.dim()}};

    // approximate commutation relations over all mode pairs
    double ccr_max = 0.0, pair_max = 0.0;
    for (const auto& p : basis.modes())
        for (const auto& q : basis.modes()) {
            auto d = ccr_check(basis, p, q);
            ccr_max = std::max(ccr_max, d.mixed);
            pair_max = std::max(pair_max, std::max(d.annih_pair, d.creat_pair));
        }
    j["ccr"] = {{"max_mixed_deviation", ccr_max}, {"max_pair_deviation", pair_max}};

    auto vn = potential_op(basis, cfg_.potential, cfg_.params);
    auto low = diagonalize(vn, 1);
    bool vn_sym = vn.equal_entries(vn.transpose(), 0.0);
    j["potential_operator"] = {{"smallest_eigenvalue", low.front()},
                               {"max_entry", vn.max_abs_entry()},
                               {"symmetric", vn_sym}};

    // number conservation: every entry connects states of equal total
    bool conserves = true;
    for (std::size_t k = 0; k < vn.values().size(); ++k)
        if (basis.total_occupancy(vn.rows()[k]) != basis.total_occupancy(vn.cols()[k]))
            conserves = false;
    j["number_conservation"] = conserves;

    // Bogoliubov pair check with the closed two-mode reference
    {
        FockBasis pair({{0, 0, 1}, {0, 0, -1}}, 40, std::max(40.0, cfg_.fock.Nparam));
        auto rep = bogoliubov_check(pair, {2.0, 2.0}, {1.0, 1.0}, 6);
        ordered_json gaps = ordered_json::array();
        for (double g : rep.gaps) gaps.push_back(g);
        j["bogoliubov_pair"] = {{"gaps", gaps}};
    }

    // V_N <= C K N_+ evidence across caps
    ordered_json sweep = ordered_json::array();
    for (int cap = 2; cap <= cfg_.fock.ncap; ++cap) {
        FockBasis bb(modes, cap, cfg_.fock.Nparam);
        sweep.push_back({{"ncap", cap}, {"C", vn_kn_constant(bb, cfg_.potential, cfg_.params)}});
    }
    j["vn_kn_sweep"] = sweep;

    const std::string path = out_path("fock_report.json");
    write_file(path, j.dump(2) + "\n");
    res.files.push_back(path);
    done_.push_back(res);
    return res;
}

std::vector<StageResult> Pipeline::cmd_all() {
    cmd_scatter();
    cmd_coeffs();
    cmd_energy();
    cmd_elambda();
    cmd_enumerate();
    cmd_fock();
    return done_;
}

void Pipeline::write_manifest() const {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_hash"] = content_hash(serialize_config(cfg_));
    j["written_at"] = timestamp_utc();
    j["validity"] = validity_json(cfg_);
    ordered_json stages = ordered_json::array();
    for (const auto& s : done_) {
        ordered_json files = ordered_json::array();
        for (const auto& f : s.files) {
            std::ifstream in(f, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            files.push_back({{"path", f},
                             {"bytes", ss.str().size()},
                             {"hash", content_hash(ss.str())}});
        }
        stages.push_back({{"name", s.name}, {"from_cache", s.from_cache}, {"files", files}});
    }
    j["stages"] = stages;
    std::ofstream out(fs::path(cfg_.output_dir) / "manifest.json");
    out << j.dump(2) << "\n";
}

}  // namespace bogo
