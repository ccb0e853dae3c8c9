// Command-line front end: one JSON report per run on stdout (or --json-out).
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "unitroot/cli.hpp"

namespace cli = unitroot::cli;

int main(int argc, char** argv) {
  CLI::App app{"Unit roots of hypersurface zeta functions: oracle vs. hypergeometric Frobenius"};
  app.require_subcommand(1, 1);

  std::string config_path, json_out, normalization = "multinomial";
  std::optional<int> precision;
  std::optional<std::int64_t> truncation;
  int jobs = 1;
  for (const char* name : {"basis", "hasse-witt", "zeta", "unit-roots", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "instance JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--precision", precision, "p-adic precision m (overrides config)")->check(CLI::PositiveNumber);
    sub->add_option("--truncation", truncation, "series cap W; needs W >= p^m - 1 and p | W+1");
    sub->add_option("--normalization", normalization, "Hasse-Witt normalization")
        ->check(CLI::IsMember({"multinomial", "literal"}));
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--json-out", json_out, "write the report here instead of stdout");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kValidation;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  cli::Report rep;
  try {
    std::ifstream in(config_path);
    cli::Json doc;
    try {
      doc = cli::Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw unitroot::Error(unitroot::ErrorKind::Validation, std::string("config is not valid JSON: ") + e.what());
    }
    cli::Options opt;
    opt.precision = precision;
    opt.truncation = truncation;
    opt.normalization = unitroot::parse_normalization(normalization);
    opt.jobs = jobs;
    rep = cli::run_command(command, cli::parse_config(doc), opt);
  } catch (const unitroot::Error& e) {
    rep.body = cli::Json{{"schema", cli::kSchema},
                         {"command", command},
                         {"error", {{"kind", unitroot::to_string(e.kind())}, {"stage", "config"}, {"message", e.what()}}}};
    rep.timing = cli::Json::object();
    rep.exit_code = cli::exit_code_for(e.kind());
  }

  const std::string text = rep.document().dump(2) + "\n";
  if (json_out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(json_out);
    out << text;
  }
  if (rep.body.contains("error")) std::cerr << rep.body["error"]["message"].get<std::string>() << "\n";
  return rep.exit_code;
}
