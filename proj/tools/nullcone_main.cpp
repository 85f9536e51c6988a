// nullcone: evolve radial wave equations, extract radiation fields, and
// check energy budgets. See README.md for the config schema.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nullcone/pipeline.hpp"

namespace {

// Output directory: --out flag, else the config's `out`, else cwd; relative
// paths resolve against NULLCONE_OUT when that is set.
std::string resolve_out_dir(const std::string& flag_out,
                            const std::string& cfg_out) {
  std::string dir = !flag_out.empty() ? flag_out : cfg_out;
  if (dir.empty()) dir = ".";
  std::filesystem::path p(dir);
  if (p.is_relative()) {
    if (const char* root = std::getenv("NULLCONE_OUT"))
      p = std::filesystem::path(root) / p;
  }
  return p.string();
}

int error_exit(const std::exception& e, const std::string& kind) {
  nlohmann::json err;
  err["error"] = {{"kind", kind}, {"message", e.what()}};
  std::cerr << err.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial wave laboratory: radiation fields and energy budgets"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  int levels = 3;

  auto* run_cmd = app.add_subcommand("run", "execute one configured run");
  run_cmd->add_option("config", config_path, "JSON run configuration")->required();
  run_cmd->add_option("--out", out_override, "output directory override");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "grid-refinement convergence study");
  sweep_cmd->add_option("config", config_path, "JSON run configuration")->required();
  sweep_cmd->add_option("--levels", levels, "number of refinement levels");
  sweep_cmd->add_option("--out", out_override, "output directory override");

  CLI11_PARSE(app, argc, argv);

  try {
    const nullcone::RunConfig cfg = nullcone::load_config(config_path);
    const std::string out_dir = resolve_out_dir(out_override, cfg.out);
    if (run_cmd->parsed()) {
      const nullcone::RunArtifacts art = nullcone::run_scenario(cfg);
      nullcone::write_outputs(art, out_dir);
      for (const auto& f : art.flags) {
        std::cout << (f.pass ? "PASS " : "FAIL ") << f.name << " = " << f.value
                  << " (tolerance " << f.tolerance << ")\n";
      }
      std::cout << "outputs written to " << out_dir << "\n";
      return art.all_pass() ? 0 : 2;
    }
    const nullcone::SweepResult res = nullcone::convergence_sweep(cfg, levels);
    nullcone::write_sweep(res, out_dir);
    for (const auto& lv : res.levels) {
      std::cout << lv.cells << " cells: error " << lv.error;
      if (lv.exact)
        std::cout << " (exact)";
      else if (lv.order)
        std::cout << ", order " << *lv.order;
      std::cout << "\n";
    }
    std::cout << "outputs written to " << out_dir << "\n";
    return res.all_pass() ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    return error_exit(e, "invalid_input");
  } catch (const std::exception& e) {
    return error_exit(e, "runtime");
  }
}
