// Command-line front end: single runs, sweeps, built-in presets and self tests.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rht/config.hpp"
#include "rht/presets.hpp"
#include "rht/report.hpp"
#include "rht/selftest.hpp"
#include "rht/simulator.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 2;

struct Overrides {
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Root seed (overrides the config)");
  cmd->add_option("--trials", o.trials, "Trials per point (overrides the config)")->check(CLI::PositiveNumber);
}

void apply(rht::ExperimentConfig& cfg, const Overrides& o) {
  if (o.seed) rht::set_seed(cfg, *o.seed);
  if (o.trials) cfg.trials = *o.trials;
  cfg.validate();
}

int execute(rht::ParsedConfig parsed, const Overrides& o, bool sweep) {
  rht::ExperimentConfig& cfg = parsed.experiment;
  apply(cfg, o);
  if (sweep && !cfg.sweep) throw rht::ConfigError("sweep requested but the config has no 'sweep' list");

  rht::RunManifest manifest;
  manifest.config_digest = parsed.digest;
  manifest.seed = cfg.seed;
  manifest.trials = cfg.trials;
  manifest.tool_version = rht::kToolVersion;
  manifest.started_at = rht::utc_timestamp();

  std::vector<rht::ExperimentResult> results;
  if (sweep) {
    results = rht::sweep_malicious_fraction(cfg);
  } else {
    results.push_back(rht::run_experiment(cfg));
  }

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const fs::path csv = dir / "results.csv";
  rht::emit_csv(results, csv);
  manifest.outputs.push_back(csv.string());
  if (sweep) {
    const fs::path svg = dir / "results.svg";
    rht::emit_plot(results, svg);
    manifest.outputs.push_back(svg.string());
  }
  const fs::path manifest_path = dir / "manifest.json";
  manifest.outputs.push_back(manifest_path.string());
  manifest.finished_at = rht::utc_timestamp();
  rht::emit_manifest(manifest, manifest_path);

  std::cout << rht::format_table(results);
  for (const auto& path : manifest.outputs) std::cout << "wrote " << path << "\n";
  return 0;
}

int selftest() {
  const rht::SuiteResult suites[] = {rht::check_aglrt_equivalence({}), rht::check_closed_form({})};
  bool ok = true;
  for (const auto& s : suites) {
    std::printf("%-34s %s  checks=%zu failures=%zu max_deviation=%.3g\n", s.name.c_str(),
                s.passed() ? "PASS" : "FAIL", s.checks, s.failures, s.max_deviation);
    if (!s.passed()) std::printf("  first failure: %s\n", s.first_failure.c_str());
    ok = ok && s.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient binary hypothesis testing with trust values"};
  app.require_subcommand(1);

  Overrides run_opts, sweep_opts, reproduce_opts;
  std::string run_config, sweep_config, preset;

  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  run->add_option("--config", run_config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  add_override_flags(run, run_opts);

  auto* sweep = app.add_subcommand("sweep", "Sweep the malicious fraction over the config's 'sweep' list");
  sweep->add_option("--config", sweep_config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  add_override_flags(sweep, sweep_opts);

  auto* reproduce = app.add_subcommand("reproduce", "Run a built-in preset");
  reproduce->add_option("preset", preset, "numerical-study or hardware-replica")
      ->required()
      ->check(CLI::IsMember(rht::preset_names()));
  add_override_flags(reproduce, reproduce_opts);

  auto* self = app.add_subcommand("selftest", "Run the oracle-equivalence and closed-form suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (run->parsed()) return execute(rht::parse_config(run_config), run_opts, false);
    if (sweep->parsed()) return execute(rht::parse_config(sweep_config), sweep_opts, true);
    if (reproduce->parsed()) {
      const bool is_sweep = preset == "numerical-study";
      return execute(rht::parse_config_text(rht::preset_text(preset)), reproduce_opts, is_sweep);
    }
    if (self->parsed()) return selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsageError;
}
