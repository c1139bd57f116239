// codecast -- optimize, analyze and simulate packet-level coding schemes for
// lossy broadcast with heterogeneous receivers.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "codecast/cli.hpp"

namespace {

void add_common(CLI::App* cmd, codecast::cli::Options& opt) {
  cmd->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  cmd->add_option("--out", opt.out_path, "Output file path");
  cmd->add_option("--seed", opt.seed, "Master seed for all randomness");
  cmd->add_option("--grid-step", opt.grid_step, "Constraint grid step");
  cmd->add_option("--cap-multiplier", opt.cap_multiplier,
                  "Stop a run after cap-multiplier * N transmissions");
}

void add_scheme(CLI::App* cmd, codecast::cli::Options& opt) {
  cmd->add_option("--scheme", opt.scheme, "lt | lt-sys | growth | chunked")->required();
  cmd->add_option("--dist", opt.dist_path, "Degree distribution JSON (lt, lt-sys)");
  cmd->add_option("--scale", opt.scale, "Growth stretch factor or 'auto'");
  cmd->add_option("--chunks", opt.chunks, "Chunk count n or 'auto'");
  cmd->add_option("--scale-step", opt.scale_step, "Grid step of the scale search");
  cmd->add_option("--quad-tol", opt.quad_tol, "Quadrature tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded broadcast delivery-time toolbox"};
  app.require_subcommand(1);
  codecast::cli::Options opt;

  auto* optimize = app.add_subcommand(
      "optimize", "Design the delivery-time-optimal degree distribution");
  add_common(optimize, opt);
  optimize->add_flag("--systematic", opt.systematic,
                     "Optimize the variant with one uncoded first round");

  auto* analyze =
      app.add_subcommand("analyze", "Analytic per-user delivery times + baselines");
  add_common(analyze, opt);
  analyze->add_option("--scheme", opt.scheme,
                      "lt | lt-sys | growth | chunked | baselines")->required();
  analyze->add_option("--dist", opt.dist_path, "Degree distribution JSON (lt, lt-sys)");
  analyze->add_option("--scale", opt.scale, "Growth stretch factor or 'auto'");
  analyze->add_option("--chunks", opt.chunks, "Chunk count n or 'auto'");
  analyze->add_option("--scale-step", opt.scale_step, "Grid step of the scale search");
  analyze->add_option("--quad-tol", opt.quad_tol, "Quadrature tolerance");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo broadcast runs");
  add_common(simulate, opt);
  add_scheme(simulate, opt);
  simulate->add_option("--runs", opt.runs, "Number of independent runs");
  simulate->add_option("--trace", opt.trace_path,
                       "Also write mean decoded-fraction trajectories (CSV)");

  auto* sweep = app.add_subcommand(
      "sweep", "Re-optimize every scheme while one user's demand varies");
  add_common(sweep, opt);
  sweep->add_option("--vary-user", opt.vary_user, "Index of the user to vary");
  sweep->add_option("--z-from", opt.z_from, "First demand value (number or a/b)");
  sweep->add_option("--z-to", opt.z_to, "Last demand value (number or a/b)");
  sweep->add_option("--z-step", opt.z_step, "Demand increment (number or a/b)");
  sweep->add_option("--schemes", opt.schemes,
                    "Subset of lt lt-sys growth chunked lower_bound unicast timeshare");
  sweep->add_option("--scale-step", opt.scale_step, "Grid step of the scale search");
  sweep->add_option("--quad-tol", opt.quad_tol, "Quadrature tolerance");

  auto* baselines =
      app.add_subcommand("baselines", "Closed-form reference schemes");
  add_common(baselines, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (optimize->parsed()) return codecast::cli::cmd_optimize(opt, std::cout, std::cerr);
  if (analyze->parsed()) return codecast::cli::cmd_analyze(opt, std::cout, std::cerr);
  if (simulate->parsed()) return codecast::cli::cmd_simulate(opt, std::cout, std::cerr);
  if (sweep->parsed()) return codecast::cli::cmd_sweep(opt, std::cout, std::cerr);
  if (baselines->parsed()) return codecast::cli::cmd_baselines(opt, std::cout, std::cerr);
  return 2;
}
