// emorse: command-line front end for spec files and the fixture catalog.
//
// Exit status: 0 on success, 1 when a check, cross-check or comparison
// fails, 2 on unreadable or invalid input.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "emorse/catalog.hpp"
#include "emorse/report.hpp"

namespace {

using namespace emorse;

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(const Report& r, Section section, const std::string& format, bool ok) {
  std::cout << (format == "json" ? render_json(r, section) : render_text(r, section));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enriched Morse complexes and spectral sequences over GF(2)"};
  app.require_subcommand(1);

  std::string path;
  std::string format = "table";
  std::optional<int> max_page;

  auto add_spec_command = [&](const std::string& name, const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("spec", path, "Spec file, or - for stdin")->required();
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));
    return cmd;
  };
  auto* check = add_spec_command("check", "Validate a spec and its structure equation");
  auto* homology_cmd = add_spec_command("homology", "Homology of the total complex");
  auto* pages = add_spec_command("pages", "Spectral sequence pages");
  pages->add_option("--max-page", max_page, "Last page to tabulate")->check(CLI::PositiveNumber);
  auto* e2 = add_spec_command("e2", "E2 via fiber homology, cross-checked against the page engine");
  auto* compare = add_spec_command("compare", "Diff against the spec's reference block");

  auto* catalog_cmd = app.add_subcommand("catalog", "Built-in fixtures");
  catalog_cmd->require_subcommand(1);
  auto* list = catalog_cmd->add_subcommand("list", "List fixture names");
  auto* emit_cmd = catalog_cmd->add_subcommand("emit", "Print a fixture as a spec document");
  std::string fixture;
  std::optional<int> param;
  emit_cmd->add_option("name", fixture, "Fixture name")->required();
  emit_cmd->add_option("--param", param, "Fixture parameter (s2-pathloop-N: truncation degree)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
      return 0;
    }
    if (emit_cmd->parsed()) {
      std::cout << emit_spec(catalog(fixture, param));
      return 0;
    }

    const auto spec = parse_spec(read_input(path));
    const auto report = run_report(spec, ReportOptions{max_page});
    if (check->parsed()) return emit(report, Section::check, format, report.checks_ok());
    if (homology_cmd->parsed()) return emit(report, Section::homology, format, report.computed);
    if (pages->parsed()) return emit(report, Section::pages, format, report.infinity_ok());
    if (e2->parsed()) return emit(report, Section::e2, format, report.e2_ok());
    if (compare->parsed()) return emit(report, Section::compare, format, report.compare_ok());
  } catch (const SpecError& e) {
    for (const auto& issue : e.issues()) std::cerr << "error: " << issue.location << ": " << issue.message << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
