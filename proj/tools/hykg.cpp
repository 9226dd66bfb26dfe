#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hykg/cli.hpp"
#include "hykg/config.hpp"
#include "hykg/version.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<int> n_max;
  std::optional<int> jobs;
  std::optional<std::string> out;
};

hykg::config::RunConfig load(const Overrides& o) {
  hykg::config::RunConfig c = o.config_path.empty() ? hykg::config::RunConfig{} : hykg::config::load(o.config_path);
  if (o.n_max) c.n_max = *o.n_max;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.out) c.out = *o.out;
  hykg::config::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Klein-Gordon Hylleraas spectra, wavefunctions and audits"};
  app.set_version_flag("--version", std::string(hykg::kVersion));
  app.require_subcommand(1);

  Overrides ov;
  int wf_n = 0;
  std::string perturb;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ov.config_path, "Run configuration file");
    sub->add_option("--n-max", ov.n_max, "Highest level index");
    sub->add_option("--jobs", ov.jobs, "Worker threads");
    sub->add_option("--out", ov.out, "Output directory");
  };
  CLI::App* spectrum = app.add_subcommand("spectrum", "Levels of the selected engines");
  CLI::App* wavefunction = app.add_subcommand("wavefunction", "Closed-form and oracle radial functions");
  CLI::App* audit = app.add_subcommand("audit", "Engine comparison and identity checks");
  CLI::App* oracle = app.add_subcommand("oracle", "Finite-difference and Numerov reference levels");
  CLI::App* selftest = app.add_subcommand("selftest", "Embedded fixture suite");
  for (CLI::App* sub : {spectrum, wavefunction, audit, oracle, selftest}) add_common(sub);
  wavefunction->add_option("--n", wf_n, "Level index")->required();
  selftest->add_option("--perturb", perturb)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hykg::cli::kConfigError;
  }

  try {
    if (selftest->parsed()) {
      return hykg::cli::cmd_selftest(std::cout, perturb, hykg::cli::use_color());
    }
    const hykg::config::RunConfig c = load(ov);
    if (spectrum->parsed()) return hykg::cli::cmd_spectrum(c, std::cerr);
    if (wavefunction->parsed()) return hykg::cli::cmd_wavefunction(c, wf_n, std::cerr);
    if (audit->parsed()) return hykg::cli::cmd_audit(c, std::cerr);
    if (oracle->parsed()) return hykg::cli::cmd_oracle(c, std::cerr);
  } catch (const hykg::Error& e) {
    std::cerr << "hykg: " << e.what() << "\n";
    return hykg::cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "hykg: " << e.what() << "\n";
    return hykg::cli::kIoError;
  }
  return hykg::cli::kConfigError;
}
