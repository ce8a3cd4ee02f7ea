#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "layout/abstraction.hpp"
#include "layout/errors.hpp"
#include "layout/report.hpp"
#include "layout/sheet_io.hpp"

namespace {

namespace fs = std::filesystem;
using namespace layout;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError("cannot write file: " + path.string());
  out << content;
}

DocumentFormat detect_format(const std::string& explicit_format, const fs::path& input) {
  if (explicit_format == "json") return DocumentFormat::Json;
  if (explicit_format == "csv") return DocumentFormat::Csv;
  return input.extension() == ".csv" ? DocumentFormat::Csv : DocumentFormat::Json;
}

std::vector<OrdinalDictionary> collect_dictionaries(
    const std::vector<std::string>& dict_paths) {
  std::vector<OrdinalDictionary> user;
  std::vector<fs::path> paths;
  if (const char* dir = std::getenv("LAYOUT_AREAS_DICT_DIR")) {
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") paths.push_back(entry.path());
      }
      std::sort(paths.begin(), paths.end());
    }
  }
  for (const auto& p : dict_paths) paths.emplace_back(p);
  for (const auto& path : paths) {
    user.push_back(load_ordinal_dictionary(read_file(path), path.stem().string()));
  }
  return merge_dictionaries(std::move(user));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstructs spreadsheet layout areas from labels and formatting and "
               "reports structural irregularities"};
  app.require_subcommand(1);

  std::string input_path;
  std::string format = "auto";
  std::string locale_name = "comma";
  int max_gap = 0;
  long step = 1;
  std::vector<std::string> dict_paths;
  std::string output_spec = "text";
  std::string out_path;

  CLI::App* analyze = app.add_subcommand("analyze", "Analyze one sheet document");
  analyze->add_option("input", input_path, "Sheet document (JSON or CSV)")->required();
  analyze->add_option("--format", format, "Input format: json or csv (default: by extension)")
      ->check(CLI::IsMember({"auto", "json", "csv"}));
  analyze->add_option("--locale", locale_name, "Numeric locale: point or comma")
      ->check(CLI::IsMember({"point", "comma"}));
  analyze->add_option("--max-gap", max_gap,
                      "Maximum empty cells tolerated inside an assigned block")
      ->check(CLI::NonNegativeNumber);
  analyze->add_option("--step", step, "Running-number step size");
  analyze->add_option("--ordinal-dict", dict_paths,
                      "Ordinal dictionary JSON file (repeatable)");
  analyze->add_option("--output", output_spec,
                      "Comma-separated output formats: text,json,html");
  analyze->add_option("--out", out_path,
                      "Output path (base path when several formats are selected)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  std::vector<std::string> outputs;
  {
    std::stringstream spec(output_spec);
    std::string item;
    while (std::getline(spec, item, ',')) {
      if (item.empty()) continue;
      if (item != "text" && item != "json" && item != "html") {
        std::cerr << "error: unknown output format \"" << item << "\"\n";
        return 1;
      }
      if (std::find(outputs.begin(), outputs.end(), item) == outputs.end()) {
        outputs.push_back(item);
      }
    }
  }
  if (outputs.empty()) {
    std::cerr << "error: at least one output format is required\n";
    return 1;
  }

  try {
    const fs::path input(input_path);
    if (!fs::exists(input)) {
      std::cerr << "error: no such file: " << input_path << "\n";
      return 1;
    }
    const NumberLocale locale =
        locale_name == "point" ? NumberLocale::PointDecimal : NumberLocale::CommaDecimal;

    PipelineConfig config;
    config.max_gap = max_gap;
    config.step = step;
    config.dictionaries = collect_dictionaries(dict_paths);

    const Sheet sheet = load_sheet(read_file(input), detect_format(format, input), locale,
                                   input.stem().string());
    const SheetAnalysis analysis = analyze_sheet(sheet, config);

    ReportOptions report_options;
    report_options.locale = locale;
    for (const std::string& kind : outputs) {
      std::string rendered;
      if (kind == "text") rendered = render_text(sheet, analysis, report_options);
      else if (kind == "json") rendered = render_json(analysis);
      else rendered = render_html(sheet, analysis, report_options);

      if (out_path.empty()) {
        std::cout << rendered;
      } else if (outputs.size() == 1) {
        write_file(out_path, rendered);
      } else {
        const std::string extension = kind == "text" ? ".txt" : "." + kind;
        write_file(out_path + extension, rendered);
      }
    }
    return analysis.findings.empty() ? 0 : 2;
  } catch (const FormulaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DocumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
