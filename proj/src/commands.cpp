#include "evendt/commands.hpp"

#include <cstdio>
#include <filesystem>

#include "evendt/color_gem.hpp"
#include "evendt/document.hpp"
#include "evendt/verify.hpp"

namespace evendt {

namespace {

EvenConfig even_config(Mode mode, std::optional<std::size_t> cap, ParityScope scope) {
  EvenConfig config;
  config.mode = mode;
  config.steiner_cap = cap;
  config.parity_scope = scope;
  return config;
}

void print_report(const VerificationReport& r, bool require_even, std::ostream& out) {
  auto word = [](bool ok) { return ok ? "ok" : "FAIL"; };
  out << "delaunay " << word(r.delaunay_ok) << '\n';
  out << "locally-delaunay " << word(r.locally_delaunay_ok) << '\n';
  out << "hull " << word(r.hull_ok) << '\n';
  out << "euler " << word(r.euler_ok) << '\n';
  out << "structure " << word(r.structure_ok) << '\n';
  out << "odd-interior-vertices " << r.odd_interior_vertices.size() << (require_even ? "" : " (not required)") << '\n';
  out << "coloring " << (r.coloring_ok ? word(*r.coloring_ok) : "absent") << '\n';
  for (const std::string& d : r.details) out << "  " << d << '\n';
}

}  // namespace

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<Point> points;
  try {
    points = read_points(args.input);
    if (points.empty()) throw InvalidInput(args.input + ": no points");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }

  const EvenConfig config = even_config(args.mode, args.cap, args.parity_scope);
  Document doc;
  int status = kExitOk;
  try {
    const EvenResult r = dqa_even(points, config);
    doc = make_document(args.mode, r.mesh, r.stats, r.top_base);
    if (args.mode == Mode::Even) {
      doc.coloring = three_color(doc.mesh);
      doc.gem = build_gem(doc.mesh, *doc.coloring);
    }
    const VerificationReport report = verify(doc.mesh, doc.coloring ? &*doc.coloring : nullptr,
                                             doc.gem ? &*doc.gem : nullptr);
    if (!report.passed(args.mode == Mode::Even)) {
      err << "error: output failed verification\n";
      print_report(report, args.mode == Mode::Even, err);
      status = kExitInternal;
    }
  } catch (const SteinerCapExceeded& e) {
    // Only the input and the counters survive a cap hit.
    Pseudotriangulation partial;
    for (const Point& p : sort_points(points)) partial.add_vertex(p);
    doc = make_document(args.mode, partial, e.stats());
    err << "error: " << e.what() << '\n';
    status = kExitCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }

  try {
    write_file(args.out, write_document(doc));
    if (args.svg) write_file(*args.svg, render_svg(doc));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  out << "n=" << doc.stats.n_input << " m=" << doc.stats.m_steiner << " triangles=" << doc.mesh.triangle_count()
      << " mode=" << mode_name(args.mode) << " cap_triggered=" << (doc.stats.cap_triggered ? "true" : "false")
      << '\n';
  return status;
}

int cmd_verify(const std::string& document, std::ostream& out, std::ostream& err) {
  Document doc;
  try {
    doc = read_document(read_file(document));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  const bool require_even = doc.mode == Mode::Even;
  const VerificationReport report =
      verify(doc.mesh, doc.coloring ? &*doc.coloring : nullptr, doc.gem ? &*doc.gem : nullptr);
  print_report(report, require_even, out);
  const bool ok = report.passed(require_even);
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_probe(const ProbeArgs& args, std::ostream& out, std::ostream& err) {
  if (args.probe.trials == 0 || args.probe.n == 0) {
    err << "error: --n and --trials must be positive\n";
    return kExitBadInput;
  }
  const ProbeReport report = probe_conjecture(args.probe, even_config(Mode::Even, args.cap, args.parity_scope));
  const std::string csv = probe_csv(report);
  try {
    if (args.csv) {
      write_file(*args.csv, csv);
    } else {
      out << csv;
    }
    for (const ProbeRecord& r : report.records) {
      if (r.outcome == Outcome::Ok) continue;
      const std::filesystem::path path = std::filesystem::path(args.reproducers) /
                                         ("probe-" + std::to_string(args.probe.seed) + "-trial-" +
                                          std::to_string(r.trial) + "-" + outcome_name(r.outcome) + ".txt");
      write_file(path.string(), "# " + outcome_name(r.outcome) + " in trial " + std::to_string(r.trial) + "\n" +
                                    format_points(r.reproducer));
      err << "reproducer: " << path.string() << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  if (args.csv) {
    char mean[64];
    std::snprintf(mean, sizeof mean, "%.3f", report.mean_m);
    out << "trials=" << report.records.size() << " max_m=" << report.max_m << " mean_m=" << mean
        << " cap_triggers=" << report.cap_triggers << " placement_failures=" << report.placement_failures << '\n';
  }
  return kExitOk;
}

int cmd_render(const RenderArgs& args, std::ostream&, std::ostream& err) {
  try {
    const Document doc = read_document(read_file(args.document));
    write_file(args.svg, render_svg(doc, {args.emphasize_base, args.label_colors}));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}

}  // namespace evendt
