#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "frackernel/cli.hpp"

namespace fc = frackernel::cli;

int main(int argc, char** argv) {
  CLI::App app{"Subordinated heat kernels: evaluation, asymptotics, validation, sampling"};
  app.set_version_flag("--version", fc::kVersion);
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value file; command-line flags win");

  fc::RunConfig c;
  std::string output;

  // Options live on the root app so that a flat key=value file can set them.
  app.add_option("--base", c.base, "base kernel: gauss, cauchy or stable")
      ->check(CLI::IsMember({"gauss", "cauchy", "stable"}));
  app.add_option("--d", c.d, "spatial dimension");
  app.add_option("--gamma", c.gamma, "stable base: profile of the 2gamma-stable process");
  app.add_option("--beta", c.beta, "subordinator index in (0,1)");
  app.add_option("--mode", c.mode, "sub or invsub");
  app.add_option("--t", c.t, "time grid (comma separated)")->delimiter(',');
  app.add_option("--rho", c.rho, "distance grid (comma separated)")->delimiter(',');
  app.add_option("--case", c.sweep_case,
                 "validation case: 1a 1b 2a 2b 2c or sub-far, sub-near, invsub-large-t, "
                 "invsub-small-t, invsub-small-t-exp");
  app.add_option("--a-from", c.a_from, "first similarity value");
  app.add_option("--a-to", c.a_to, "last similarity value");
  app.add_option("--per-decade", c.per_decade, "sweep points per decade");
  app.add_option("--tol", c.tol, "validate: tolerance on max |ratio-1| over the last decade\n(default 0.05 in the d = alpha log regime, else 0.02)");
  app.add_option("--time", c.t_fixed, "fixed time for validate and sample");
  app.add_option("--corollary", c.corollary, "asym: closed form 1a..1d, 2a..2d, 3a, 3b");
  app.add_option("--theorem", c.theorem, "asym: generic form 1a 1b 2a 2b 2c for --base");
  app.add_option("--kappa", c.kappa, "moment orders (comma separated)")->delimiter(',');
  app.add_option("--kind", c.moment_kind, "moments: stable or levy");
  app.add_option("--alpha", c.levy_alpha, "moments --kind levy: stability index");
  app.add_option("--sample", c.sample_kind, "sample: subordinator, inverse or timechanged");
  app.add_option("--n", c.n, "sample size");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance");
  app.add_option("--max-depth", c.max_depth, "quadrature bisection depth");
  app.add_option("--truncate", c.truncate, "hard truncation point M (no tail)");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", output, "output path (default standard output)");

  for (const char* name : {"eval", "validate", "moments", "sample", "asym"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fc::kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  if (output.empty()) return fc::run(c, std::cout, std::cerr);
  std::ofstream file(output, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << output << '\n';
    return fc::kUsage;
  }
  return fc::run(c, file, std::cerr);
}
