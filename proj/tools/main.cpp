#include <CLI11.hpp>
#include <cstdio>
#include <optional>
#include <string>

#include "symfix/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "symfix: exact verification of the fixed-locus classification for symplectic\n"
      "involutions on hyperkaehler fourfolds with second Betti number 23, plus the\n"
      "three fixed-point censuses realizing its admissible profiles"};
  app.require_subcommand(1);

  symfix::cli::RunConfig cfg;
  std::uint64_t seed = 0;
  double residual_tol = 0, dedupe_tol = 0;
  int starts = 0, threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output_path, "write the JSON report to this file");
    sub->add_option("-v,--verbosity", cfg.verbosity,
                    "0: verdict only, 1: certificate lines, 2: + details")
        ->check(CLI::Range(0, 2));
  };
  auto add_epw = [&](CLI::App* sub) {
    sub->add_option("-i,--instance", cfg.instance_path,
                    "instance file (JSON); defaults to the bundled reference instance");
    auto* s = sub->add_option("--seed", seed, "node-search seed");
    auto* rt = sub->add_option("--residual-tol", residual_tol,
                               "acceptance tolerance for node residuals");
    auto* dt = sub->add_option("--dedupe-tol", dedupe_tol,
                               "projective distance identifying two node candidates");
    auto* st = sub->add_option("--starts", starts, "Newton starts per chart");
    auto* th = sub->add_option("--threads", threads, "worker threads (search only)");
    sub->callback([&, s, rt, dt, st, th] {
      if (s->count()) cfg.seed = seed;
      if (rt->count()) cfg.residual_tol = residual_tol;
      if (dt->count()) cfg.dedupe_tol = dedupe_tol;
      if (st->count()) cfg.starts = starts;
      if (th->count()) cfg.threads = threads;
    });
  };

  CLI::App* classify =
      app.add_subcommand("classify", "solve the three-sheaf fixed-point system exactly");
  add_common(classify);

  CLI::App* hilbert = app.add_subcommand(
      "hilbert", "census for the induced involution on the length-2 Hilbert scheme");
  add_common(hilbert);
  hilbert->add_option("--points", cfg.hilbert_points,
                      "fixed points of the surface involution (default 8)")
      ->check(CLI::Range(2, 1000));
  hilbert->add_option("--surface-trace", cfg.surface_trace,
                      "trace on the surface's rank-20 (1,1)-lattice (default 4)");

  CLI::App* fano = app.add_subcommand(
      "fano", "census for the coordinate involution on the variety of lines of a cubic");
  add_common(fano);

  CLI::App* epw = app.add_subcommand(
      "epw", "certificates and censuses for a structured double-cover instance");
  add_common(epw);
  add_epw(epw);

  CLI::App* all = app.add_subcommand("all", "run every verification");
  add_common(all);
  add_epw(all);
  all->add_option("--points", cfg.hilbert_points,
                  "fixed points of the surface involution (default 8)")
      ->check(CLI::Range(2, 1000));
  all->add_option("--surface-trace", cfg.surface_trace,
                  "trace on the surface's rank-20 (1,1)-lattice (default 4)");

  CLI11_PARSE(app, argc, argv);

  if (classify->parsed()) cfg.subcommand = "classify";
  if (hilbert->parsed()) cfg.subcommand = "hilbert";
  if (fano->parsed()) cfg.subcommand = "fano";
  if (epw->parsed()) cfg.subcommand = "epw";
  if (all->parsed()) cfg.subcommand = "all";

  symfix::cli::RunResult result = symfix::cli::run(cfg);
  std::fputs(result.summary.c_str(), stdout);
  return result.exit_code;
}
