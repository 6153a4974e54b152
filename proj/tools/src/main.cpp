#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nilbohr: exact searches for syndetic recurrence on tori and nilmanifolds"};
  app.require_subcommand(1);

  nilbohr::cli::RunOptions options;
  const char* commands[] = {"thm-a",          "thm-b",     "staged",     "sg-enum",
                            "counterexample", "divisible", "poly-check", "hk-check"};
  for (const char* name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", options.config_path, "instance config (JSON)")->required();
    sub->add_option("--workers", options.workers, "worker threads for sharded scans");
    sub->add_option("--out", options.out_dir, "output directory");
    sub->add_flag("--emit-latex", options.emit_latex, "also render a LaTeX table");
    sub->callback([&options, name] { options.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    nilbohr::cli::run_command(options);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
