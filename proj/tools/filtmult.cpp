#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>

#include "filtmult/commands.hpp"

using namespace filtmult;

namespace {

Json load_input(const std::string& path) {
  if (path.empty()) return Json::object();
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kSchema, "cannot read '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_json(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicities of filtrations of monomial ideals and divisorial models"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string schedule, format = "table";
  app.add_option("--input", config.input_path, "Input JSON file ('-' for stdin)");
  app.add_option("--schedule", schedule, "Comma-separated m values, e.g. 25,50,100");
  app.add_option("--m-max", config.m_max, "Level cap for bodies and gamma");
  app.add_option("--n-max", config.n_max, "Levels compared for closures");
  app.add_option("--r-max", config.r_max, "Root degree cap for closures");
  app.add_option("--q-cap", config.q_cap, "Denominator cap for rescaling candidates");
  app.add_option("--format", format, "json | table | csv")->check(CLI::IsMember({"json", "table", "csv"}));
  app.add_option("--digits", config.digits, "Significant digits for floats");

  for (const auto& name : command_names()) {
    app.add_subcommand(name)->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    config.format = parse_format(format);
    if (!schedule.empty()) config.schedule = parse_schedule(schedule);
    config.validate();
    if (config.command != "example-c7" && config.input_path.empty()) {
      throw Error(ErrorKind::kSchema, config.command + " needs --input");
    }
    Json report = run_command(config, load_input(config.input_path));
    std::cout << render(config.command, report, config.format, config.digits);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
}
