#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "tropmech/errors.hpp"

namespace cli = tropmech::cli;

int main(int argc, char** argv) {
  CLI::App app{"Exact tropical analysis of single-agent mechanisms", "tropmech"};
  std::string command;
  std::string input_path;
  std::string out_path;
  std::optional<std::string> budget;
  std::optional<std::string> epsilon;
  std::string format;

  app.add_option("command", command, "ic-check | payments | enumerate | re-check | realize | perturb | render")
      ->required()
      ->check(CLI::IsMember({"ic-check", "payments", "enumerate", "re-check", "realize", "perturb", "render"}));
  app.add_option("--input", input_path, "request JSON file")->required();
  app.add_option("--out", out_path, "write the result here instead of stdout");
  app.add_option("--budget", budget, "maximum number of assignments m^r to enumerate");
  app.add_option("--epsilon", epsilon, "perturbation size, an exact rational such as 1/100");
  app.add_option("--format", format, "svg | json")->check(CLI::IsMember({"svg", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kMalformed;
  }

  cli::Options options;
  options.command = command;
  options.epsilon = epsilon;
  options.format = format == "svg" ? cli::Format::Svg : format == "json" ? cli::Format::Json : cli::Format::Default;
  try {
    options.budget = cli::resolve_budget(budget, std::getenv("TROPMECH_BUDGET"));
  } catch (const tropmech::UsageError& e) {
    std::cerr << "tropmech: " << e.what() << '\n';
    return cli::kMalformed;
  }

  std::ifstream in(input_path, std::ios::binary);
  if (!in) {
    std::cerr << "tropmech: cannot read " << input_path << '\n';
    return cli::kMalformed;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  options.input = buffer.str();

  const cli::Result result = cli::run(options);
  if (!result.err.empty()) std::cerr << "tropmech: " << result.err << '\n';
  if (!result.out.empty()) {
    if (out_path.empty()) {
      std::cout << result.out;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      out << result.out;
      if (!out) {
        std::cerr << "tropmech: cannot write " << out_path << '\n';
        return cli::kUnexpected;
      }
    }
  }
  return result.exit_code;
}
