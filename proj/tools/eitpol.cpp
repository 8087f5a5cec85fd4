#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eitpol/cli.hpp"

int main(int argc, char** argv)
{
  using namespace eitpol;

  CLI::App app{"Steady-state EIT polarization-rotation simulator"};
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> overrides;
  RunOptions opt;
  int verbose = 0;
  app.add_option("config", config_path, "JSON run configuration")->required();
  app.add_option("-o,--output", output_dir, "output directory (overrides output.directory)");
  app.add_option("-s,--set", overrides, "override a config entry, e.g. --set coupling.power=\"10 mW\"; null removes it")
      ->take_all();
  app.add_option("-j,--threads", opt.threads, "worker threads for sweeps (0 = all cores)");
  app.add_flag("-v,--verbose", verbose, "progress and results on stdout (repeatable)");
  app.add_flag("--dump-cg", opt.dump_cg, "also write cg_table.csv");
  app.add_flag("--dump-equations", opt.dump_equations, "also write equations.txt (nonzero generator entries)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_line("config", e.what()) << '\n';
    return exit_config_error;
  }

  RunSpec spec;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw ConfigError("cannot read configuration file " + config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
      doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
    for (const auto& o : overrides) apply_override(doc, o);
    spec = parse_config(doc);
    if (!output_dir.empty()) spec.output_directory = output_dir;
    spec.verbosity += verbose;
  } catch (const ConfigError& e) {
    std::cerr << error_line("config", e.what()) << '\n';
    return exit_config_error;
  }
  return run(spec, opt, std::cout, std::cerr);
}
