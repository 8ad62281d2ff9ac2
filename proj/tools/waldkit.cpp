#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "waldkit/cli.hpp"

using namespace waldkit;

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError(p.string() + ": cannot write");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waldhausen additivity verification suites"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a verification suite");

  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  std::string suite;
  run->add_option("suite", suite, "Suite to run")->required()->check(CLI::IsMember(suites));

  std::string config_path;
  std::optional<std::string> instance, formulation, out;
  std::optional<int> size, n_max, m_max, k_max, trunc;
  run->add_option("--config", config_path, "Flat JSON config; flags override its keys");
  run->add_option("--instance", instance, "pointed_sets | vect_f2");
  run->add_option("--size", size, "Max cardinality or dimension");
  run->add_option("--n-max", n_max, "Largest simplicial degree n");
  run->add_option("--m-max", m_max, "Largest base simplex degree m");
  run->add_option("--k-max", k_max, "Largest gap simplex degree k");
  run->add_option("--trunc", trunc, "Truncation D of simplicial sets");
  run->add_option("--formulation", formulation, "modern | classical | both");
  run->add_option("--out", out, "Report path; a .txt summary is written next to it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  SuiteConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (instance) cfg.instance = *instance;
    if (formulation) cfg.formulation = *formulation;
    if (out) cfg.out = *out;
    if (size) cfg.size = *size;
    if (n_max) cfg.n_max = *n_max;
    if (m_max) cfg.m_max = *m_max;
    if (k_max) cfg.k_max = *k_max;
    if (trunc) cfg.trunc = *trunc;
    validate_config(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto res = run_suite(cfg, suite);
    std::string text = res.report.dump(2) + "\n";
    std::string summary = summarize(res.report);
    if (cfg.out.empty()) {
      std::cout << text;
      std::cerr << summary;
    } else {
      std::filesystem::path p(cfg.out);
      write_file(p, text);
      write_file(std::filesystem::path(p).replace_extension(".txt"), summary);
      std::cout << summary;
    }
    return res.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
