#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "evendt/commands.hpp"
#include "evendt/document.hpp"

using namespace evendt;

int main(int argc, char** argv) {
  CLI::App app{"Even Delaunay triangulations: build, verify, probe and render"};
  app.require_subcommand(1);

  const std::map<std::string, Mode> modes{{"plain", Mode::Plain}, {"even", Mode::Even}, {"relaxed", Mode::Relaxed}};
  const std::map<std::string, ParityScope> scopes{{"literal", ParityScope::Literal},
                                                  {"interior-only", ParityScope::InteriorOnly}};
  const std::map<std::string, Distribution> dists{{"uniform", Distribution::Uniform},
                                                  {"grid-jitter", Distribution::GridJitter},
                                                  {"cocircular-stress", Distribution::CocircularStress}};

  BuildArgs build;
  std::size_t build_cap = 0;
  auto* cmd_b = app.add_subcommand("build", "triangulate a point file");
  cmd_b->add_option("--input", build.input, "point file, two decimals per line")->required();
  cmd_b->add_option("--mode", build.mode, "plain, even or relaxed")
      ->required()
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  auto* b_cap = cmd_b->add_option("--cap", build_cap, "maximum Steiner insertions (default 10n+100)");
  cmd_b->add_option("--parity-scope", build.parity_scope, "literal or interior-only")
      ->transform(CLI::CheckedTransformer(scopes, CLI::ignore_case));
  cmd_b->add_option("--out", build.out, "document to write")->required();
  cmd_b->add_option("--svg", build.svg, "also write an SVG figure");

  std::string verify_doc;
  auto* cmd_v = app.add_subcommand("verify", "check a document");
  cmd_v->add_option("document", verify_doc, "document to check")->required();

  ProbeArgs probe;
  std::size_t probe_cap = 0;
  auto* cmd_p = app.add_subcommand("probe", "run Even mode on many seeded instances");
  cmd_p->add_option("--n", probe.probe.n, "points per instance")->required();
  cmd_p->add_option("--trials", probe.probe.trials, "number of instances")->required();
  cmd_p->add_option("--dist", probe.probe.distribution, "uniform, grid-jitter or cocircular-stress")
      ->required()
      ->transform(CLI::CheckedTransformer(dists, CLI::ignore_case));
  cmd_p->add_option("--seed", probe.probe.seed, "probe seed")->required();
  auto* p_cap = cmd_p->add_option("--cap", probe_cap, "maximum Steiner insertions per trial");
  cmd_p->add_option("--csv", probe.csv, "write the CSV here instead of stdout");
  cmd_p->add_option("--parity-scope", probe.parity_scope, "literal or interior-only")
      ->transform(CLI::CheckedTransformer(scopes, CLI::ignore_case));
  cmd_p->add_option("--threads", probe.probe.threads, "worker threads (0 = all cores)");
  cmd_p->add_option("--reproducers", probe.reproducers, "directory for reproducer point files");

  RenderArgs render;
  auto* cmd_r = app.add_subcommand("render", "draw a document as SVG");
  cmd_r->add_option("document", render.document, "document to draw")->required();
  cmd_r->add_option("--svg", render.svg, "SVG file to write")->required();
  cmd_r->add_flag("--emphasize-base", render.emphasize_base, "draw the top-level base edge thicker");
  cmd_r->add_flag("--label-colors", render.label_colors, "print each vertex color next to it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (*cmd_b) {
      if (*b_cap) build.cap = build_cap;
      return cmd_build(build, std::cout, std::cerr);
    }
    if (*cmd_v) return cmd_verify(verify_doc, std::cout, std::cerr);
    if (*cmd_p) {
      if (*p_cap) probe.cap = probe_cap;
      return cmd_probe(probe, std::cout, std::cerr);
    }
    if (*cmd_r) return cmd_render(render, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitBadInput;
}
