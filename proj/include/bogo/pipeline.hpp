#ifndef BOGO_PIPELINE_HPP
#define BOGO_PIPELINE_HPP

#include <string>
#include <vector>

#include "bogo/run_config.hpp"

namespace bogo {

// batch stages; every command writes its data files into config.output_dir
// and appends to the run manifest (timestamps live only in the manifest)
struct StageResult {
    std::string name;
    std::vector<std::string> files;
    bool from_cache = false;
};

class Pipeline {
  public:
    explicit Pipeline(RunConfig config);

    StageResult cmd_scatter();
    StageResult cmd_coeffs();
    StageResult cmd_energy();
    StageResult cmd_elambda();
    StageResult cmd_enumerate();
    StageResult cmd_fock();
    std::vector<StageResult> cmd_all();

    void write_manifest() const;
    const RunConfig& config() const { return cfg_; }
    std::string cache_dir() const;

  private:
    RunConfig cfg_;
    std::vector<StageResult> done_;
    ScatteringSolution sol_;
    bool have_sol_ = false;

    void ensure_solution(StageResult* stage = nullptr);
    std::string out_path(const std::string& name) const;
    void write_file(const std::string& path, const std::string& bytes);
};

}  // namespace bogo

#endif
