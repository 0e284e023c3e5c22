#include "fsi/config.hpp"
#include "fsi/log.hpp"
#include "fsi/simulation.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char ** argv)
{
  CLI::App app{"one-field fictitious-domain fluid-structure interaction solver"};
  app.require_subcommand(1);

  std::string config_path, preset_name, output_dir, log_level, restart_path;
  std::vector<std::string> overrides;
  bool dump_matrices = false;

  auto add_common = [&](CLI::App * cmd) {
    cmd->add_option("--override", overrides,
                    "config override as section.key=value (repeatable)");
    cmd->add_option("--output-dir", output_dir, "output directory");
    cmd->add_option("--log-level", log_level, "debug|info|warn|error|off");
    cmd->add_option("--restart", restart_path, "resume from a saved state file");
    cmd->add_flag("--dump-matrices", dump_matrices,
                  "dump assembled operators in MatrixMarket format");
  };

  CLI::App * run = app.add_subcommand("run", "run a scenario from a config file");
  run->add_option("config", config_path, "config file (ini)")->required();
  add_common(run);

  CLI::App * preset = app.add_subcommand("preset", "run a built-in benchmark preset");
  preset->add_option("name", preset_name, "preset name")->required();
  add_common(preset);

  CLI::App * list = app.add_subcommand("list-presets", "list built-in presets");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed())
  {
    for (const auto & name: fsi::preset_names())
      std::printf("%s\n", name.c_str());
    return 0;
  }

  try
  {
    fsi::KeyValues kv = run->parsed() ? fsi::load_ini(config_path)
                                      : fsi::preset_kv(preset_name);
    for (const auto & o: overrides)
      fsi::apply_override(kv, o);
    if (!output_dir.empty())
      kv["scenario.output_dir"] = output_dir;
    if (!log_level.empty())
      kv["scenario.log_level"] = log_level;
    if (dump_matrices)
      kv["output.dump_matrices"] = "true";

    fsi::ScenarioConfig cfg = fsi::config_from_kv(kv);
    if (restart_path.empty())
      return fsi::run_scenario(cfg);

    fsi::Simulation sim(cfg);
    sim.load_state(restart_path);
    sim.run();
    return 0;
  }
  catch (const fsi::SimError & err)
  {
    std::fprintf(stderr, "%s\n", err.what());
    std::fprintf(stderr, "aborted at stage [%s]\n", err.stage.c_str());
    return 2;
  }
  catch (const std::exception & err)
  {
    std::fprintf(stderr, "%s\n", err.what());
    return 3;
  }
}
