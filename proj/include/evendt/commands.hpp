#pragma once

// The command-line operations, callable in-process. Each returns the exit status.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "evendt/even.hpp"
#include "evendt/probe.hpp"

namespace evendt {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitBadInput = 2,
  kExitCapExceeded = 3,
  kExitInternal = 4,
};

struct BuildArgs {
  std::string input;
  Mode mode = Mode::Even;
  std::optional<std::size_t> cap;
  ParityScope parity_scope = ParityScope::Literal;
  std::string out;
  std::optional<std::string> svg;
};

struct ProbeArgs {
  ProbeConfig probe;
  std::optional<std::size_t> cap;
  ParityScope parity_scope = ParityScope::Literal;
  std::optional<std::string> csv;
  /// Directory for reproducer point files of trials that did not finish normally.
  std::string reproducers = ".";
};

struct RenderArgs {
  std::string document;
  std::string svg;
  bool emphasize_base = false;
  bool label_colors = false;
};

/// Writes the document (even when the cap is hit) and prints one summary line.
int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err);
/// Prints the verification report; parity is required only of even-mode documents.
int cmd_verify(const std::string& document, std::ostream& out, std::ostream& err);
int cmd_probe(const ProbeArgs& args, std::ostream& out, std::ostream& err);
int cmd_render(const RenderArgs& args, std::ostream& out, std::ostream& err);

}  // namespace evendt
