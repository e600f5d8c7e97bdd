// harddrop — build, certify, search and inspect hard-drop board-clearing
// instances compiled from 3-partition inputs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "harddrop/certify.hpp"
#include "harddrop/formats.hpp"
#include "harddrop/gadgets.hpp"
#include "harddrop/reduction.hpp"
#include "harddrop/render.hpp"
#include "harddrop/solve.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

std::string with_extension(const std::string& path, const char* ext) {
  return std::filesystem::path(path).replace_extension(ext).string();
}

harddrop::ValidateMode mode_from_flags(bool strict) {
  return strict ? harddrop::ValidateMode::Strict : harddrop::ValidateMode::Lax;
}

int print_violations(const std::vector<harddrop::Violation>& violations) {
  for (const auto& v : violations) {
    if (v.index >= 0)
      std::cout << "violation at index " << v.index << ": " << v.message << "\n";
    else
      std::cout << "violation: " << v.message << "\n";
  }
  return violations.empty() ? kExitOk : kExitNegative;
}

int cmd_validate(const std::string& instance_path, bool strict) {
  const auto inst = harddrop::parse_instance(read_file(instance_path));
  auto violations = harddrop::validate(inst, mode_from_flags(strict));
  if (violations.empty()) {
    std::cout << "ok: " << 3 * inst.s << " numbers, s=" << inst.s
              << " B=" << inst.B << (strict ? " (strict)" : " (lax)") << "\n";
  }
  return print_violations(violations);
}

int cmd_build(const std::string& instance_path, std::string board_path,
              std::string seq_path, bool strict) {
  const auto inst = harddrop::parse_instance(read_file(instance_path));
  auto violations = harddrop::validate(inst, mode_from_flags(strict));
  if (!violations.empty()) return print_violations(violations);

  if (board_path.empty()) board_path = with_extension(instance_path, ".brd");
  if (seq_path.empty()) seq_path = with_extension(instance_path, ".seq");
  write_file(board_path, harddrop::emit_board(harddrop::build_board(inst)));
  write_file(seq_path, harddrop::emit_sequence(harddrop::build_sequence(inst)));

  std::cout << "board:    " << board_path << "\n";
  std::cout << "sequence: " << seq_path << "\n";
  std::cout << harddrop::budget_report(inst).to_text();
  return kExitOk;
}

int cmd_certify(const std::string& instance_path, const std::string& partition_path,
                bool auto_solve, std::string trace_path, bool strict) {
  const auto inst = harddrop::parse_instance(read_file(instance_path));
  auto violations = harddrop::validate(inst, mode_from_flags(strict));
  if (!violations.empty()) return print_violations(violations);

  harddrop::Partition partition;
  if (auto_solve) {
    auto solved = harddrop::solve_3partition(inst);
    if (!solved) {
      std::cout << "no partition exists\n";
      return kExitNegative;
    }
    partition = *solved;
    std::cout << "partition: " << harddrop::emit_partition(partition);
  } else {
    partition = harddrop::parse_partition(read_file(partition_path));
  }

  auto verdict = harddrop::certify(inst, partition);
  if (!verdict.trace.empty()) {
    if (trace_path.empty()) trace_path = with_extension(instance_path, ".trc");
    write_file(trace_path, harddrop::emit_trace(verdict.trace));
    std::cout << "trace:     " << trace_path << " (" << verdict.trace.size()
              << " placements)\n";
  }
  if (verdict.success) {
    std::cout << "cleared " << verdict.replay->cleared_lines
              << " lines, board empty\n";
    return kExitOk;
  }
  std::cout << "certification failed: " << verdict.failure << "\n";
  return kExitNegative;
}

int cmd_lemmas(int lemma, int lookahead) {
  auto report = harddrop::check_lemma(lemma, lookahead);
  std::cout << report.to_text();
  return report.claim_holds ? kExitOk : kExitNegative;
}

int cmd_render(const std::string& board_path) {
  std::cout << harddrop::render_with_roles(
      harddrop::parse_board(read_file(board_path)));
  return kExitOk;
}

int cmd_simulate(const std::string& board_path, const std::string& trace_path,
                 bool step) {
  harddrop::Board board = harddrop::parse_board(read_file(board_path));
  const harddrop::Trace trace = harddrop::parse_trace(read_file(trace_path));
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto applied = harddrop::apply_placement(board, trace[i].placement);
    if (!applied) {
      std::cout << "top-out at placement " << i << "\n";
      return kExitNegative;
    }
    board = applied->board;
    if (step) {
      std::cout << "after " << i + 1 << ": "
                << harddrop::kind_token(trace[i].placement.kind) << " "
                << trace[i].placement.orient << " " << trace[i].placement.col
                << " phase="
                << (trace[i].phase ? harddrop::phase_name(*trace[i].phase) : "-")
                << " cleared=" << board.cleared_total() << "\n"
                << harddrop::render_with_roles(board);
    }
  }
  std::cout << harddrop::render_with_roles(board);
  std::cout << "cleared=" << board.cleared_total() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hard-drop board clearing: reduction builder, certifier and lemma harness"};
  app.require_subcommand(1);

  std::string instance_path, partition_path, board_path, seq_path, trace_path;
  bool strict = false, lax = false, auto_solve = false, step = false;
  int lemma = 0, lookahead = 1;

  auto* validate = app.add_subcommand("validate", "check a .3p instance");
  validate->add_option("instance", instance_path, "instance file")->required();
  auto* strict_flag =
      validate->add_flag("--strict", strict, "enforce the B/4 < a < B/2 bounds");
  validate->add_flag("--lax", lax, "shape and sum checks only (default)")
      ->excludes(strict_flag);

  auto* build = app.add_subcommand("build", "compile a .3p instance into .brd/.seq");
  build->add_option("instance", instance_path, "instance file")->required();
  build->add_option("--board", board_path, "output board file");
  build->add_option("--seq", seq_path, "output sequence file");
  build->add_flag("--strict", strict, "validate strictly before building");

  auto* certify = app.add_subcommand("certify", "replay the canonical clearing strategy");
  certify->add_option("instance", instance_path, "instance file")->required();
  certify->add_option("partition", partition_path, "partition file (.part)");
  certify->add_flag("--auto", auto_solve, "find a partition first");
  certify->add_option("--trace", trace_path, "output trace file");
  certify->add_flag("--strict", strict, "validate strictly before certifying");

  auto* lemmas = app.add_subcommand("lemmas", "re-verify a placement lemma");
  lemmas->add_option("--lemma", lemma, "lemma id (5..10)")->required();
  lemmas->add_option("--lookahead", lookahead, "probe depth in plies (default 1)");

  auto* render = app.add_subcommand("render", "print a .brd file as text");
  render->add_option("board", board_path, "board file")->required();

  auto* simulate = app.add_subcommand("simulate", "replay a .trc file on a .brd board");
  simulate->add_option("board", board_path, "board file")->required();
  simulate->add_option("trace", trace_path, "trace file")->required();
  simulate->add_flag("--step", step, "print a frame after every placement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (validate->parsed()) return cmd_validate(instance_path, strict);
    if (build->parsed()) return cmd_build(instance_path, board_path, seq_path, strict);
    if (certify->parsed()) {
      if (!auto_solve && partition_path.empty()) {
        std::cerr << "certify needs a partition file or --auto\n";
        return kExitError;
      }
      if (auto_solve && !partition_path.empty()) {
        std::cerr << "pass either a partition file or --auto, not both\n";
        return kExitError;
      }
      return cmd_certify(instance_path, partition_path, auto_solve, trace_path, strict);
    }
    if (lemmas->parsed()) return cmd_lemmas(lemma, lookahead);
    if (render->parsed()) return cmd_render(board_path);
    if (simulate->parsed()) return cmd_simulate(board_path, trace_path, step);
  } catch (const harddrop::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
