#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "talab/cli.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw talab::ConfigError(path, "cannot write");
  out << text;
}

// One line per non-verified verdict found anywhere in the report.
void print_failures(const talab::Json& j, std::string where) {
  if (j.is_array()) {
    for (const auto& v : j) print_failures(v, where);
    return;
  }
  if (!j.is_object()) return;
  for (const char* key : {"stage", "name", "sequence", "branch"})
    if (j.contains(key)) {
      const auto& v = j[key];
      where += (where.empty() ? "" : " / ") + (v.is_string() ? v.get<std::string>() : "stage " + v.dump());
    }
  if (j.contains("status") && j["status"].is_string() && j["status"] != "Verified") {
    std::cerr << "  " << where << ": " << j["status"].get<std::string>() << ": " << j["detail"].get<std::string>() << "\n";
    return;
  }
  for (const auto& [k, v] : j.items())
    if (v.is_structured() && !(k == "verdict" && j.contains("checks"))) print_failures(v, where);
}

int finish(const talab::RunResult& r, const std::string& report) {
  if (report.empty()) std::cout << r.report.dump(2) << "\n";
  else write_file(report, r.report.dump(2) + "\n");
  if (r.exit_code != 0) {
    std::cerr << (r.exit_code == 2 ? "refuted" : "unknown") << ":\n";
    print_failures(r.report, "");
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and check tree algebras"};
  app.require_subcommand(1);

  std::string config, report, dot;
  std::vector<std::string> checks;
  std::size_t depth = 0;
  std::size_t m = 20;

  auto* run = app.add_subcommand("run", "Build the tree of a script and run its checks");
  run->add_option("config", config, "Script (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--check", checks, "Check to run (repeatable)");
  run->add_option("--depth", depth, "Override the script depth")->check(CLI::Range(1, 16));
  run->add_option("--report", report, "Write the JSON report here instead of stdout");
  run->add_option("--dot", dot, "Also write the tree as Graphviz");

  auto* exp = app.add_subcommand("export", "Write the tree of a script as Graphviz");
  exp->add_option("config", config, "Script (JSON)")->required()->check(CLI::ExistingFile);
  exp->add_option("--dot", dot, "Output file")->required();
  exp->add_option("--depth", depth, "Levels to draw per stage")->check(CLI::Range(1, 16));

  auto* demo = app.add_subcommand("demo-kill", "Kill the convergence of 0^n 1^inf to 0^inf");
  demo->add_option("--m", m, "Witnesses to plant")->check(CLI::Range(1, 26));
  demo->add_option("--depth", depth, "Neighborhood depth")->check(CLI::Range(1, 16));
  demo->add_option("--report", report, "Write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (demo->parsed()) return finish(talab::run_demo_kill(m, depth ? depth : 12, talab::Limits::from_env()), report);

    const auto script = talab::load_script(config);
    talab::RunOptions options;
    if (depth) options.depth = depth;
    if (exp->parsed()) options.checks = {"validate"};
    else options.checks = checks;
    const auto r = talab::run_script(script, options);
    if (!dot.empty() && r.tree) write_file(dot, talab::to_dot(*r.tree, depth ? depth : script.depth));
    if (exp->parsed()) {
      if (!r.tree) {
        std::cerr << "construction failed: " << r.report["construction"]["error"].get<std::string>() << "\n";
        return r.exit_code;
      }
      return 0;
    }
    return finish(r, report);
  } catch (const talab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
