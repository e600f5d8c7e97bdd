// Acceptance suite: runs every criterion and prints one PASS/FAIL line each.
// Usage: acceptance <path-to-cli>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "harddrop/certify.hpp"
#include "harddrop/formats.hpp"
#include "harddrop/gadgets.hpp"
#include "harddrop/reduction.hpp"
#include "harddrop/solve.hpp"

using namespace harddrop;

namespace {

namespace fs = std::filesystem;

std::string g_cli_path;
int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title)
      : number_(number), title_(std::move(title)), start_(clock_::now()) {}

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok_ = false;
      notes_.push_back(what);
    }
  }

  void info(const std::string& what) { notes_.push_back(what); }

  ~Criterion() {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        clock_::now() - start_)
                        .count();
    std::cout << (ok_ ? "PASS" : "FAIL") << "  criterion " << number_ << " — "
              << title_ << "  (" << ms << " ms)\n";
    for (const auto& note : notes_) std::cout << "      " << note << "\n";
    if (!ok_) ++g_failures;
  }

 private:
  using clock_ = std::chrono::steady_clock;
  int number_;
  std::string title_;
  clock_::time_point start_;
  std::vector<std::string> notes_;
  bool ok_ = true;
};

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command = g_cli_path + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe))
    result.output.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "harddrop_acceptance";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  out << content;
  return path;
}

const Instance3P kSmallest{1, 6, {2, 2, 2}};
const Instance3P kWorked{3, 6, {4, 3, 2, 1, 1, 1, 2, 2, 2}};
const Instance3P kNegative{2, 13, {4, 4, 4, 4, 4, 6}};

// --------------------------------------------------------------------------

void criterion1_lemma_counts() {
  Criterion c(1, "lemma counts on the closed bucket (5, 6, 7, 10)");

  auto l5 = check_lemma(5);
  c.expect(l5.stages[0].examined == 6 && l5.stages[0].good == 0 && l5.claim_holds,
           "lemma 5: expected 6 placements, 0 good");

  auto l6 = check_lemma(6);
  c.expect(l6.stages[0].examined == 6 && l6.stages[0].good == 0 &&
               l6.stages[0].well == 1 && l6.claim_holds,
           "lemma 6: expected 6 placements, 0 good, exactly 1 well");

  auto l7 = check_lemma(7);
  c.expect(l7.stages[0].examined == 3 && l7.stages[0].good == 0 &&
               l7.stages[0].well == 1 && l7.claim_holds,
           "lemma 7: expected 3 placements, 0 good, exactly 1 well");

  auto l10 = check_lemma(10);
  c.expect(l10.stages[0].examined == 6 && l10.stages[0].good == 1 &&
               l10.canonical_identified && l10.claim_holds,
           "lemma 10: expected 6 placements, exactly 1 good opening to flat");
}

void criterion2_digit_uniqueness() {
  Criterion c(2, "digit uniqueness (lemma 8): one all-good T,T,RG line, flat +4");
  auto r = check_lemma(8, 0);
  c.expect(r.stages.size() == 3, "expected three stages");
  c.expect(r.stages[0].examined == 6 && r.stages[0].good == 1,
           "first T: expected exactly 1 good of 6");
  c.expect(r.stages[1].examined == 6 && r.stages[1].good == 2,
           "second T: expected exactly 2 good of 6");
  c.expect(r.survivors == 1, "expected exactly one accepted line");
  c.expect(r.canonical_identified, "accepted line is not the canonical digit");
  c.expect(r.claim_holds, "lemma 8 claim did not hold");
}

void criterion3_close_uniqueness() {
  Criterion c(3, "close uniqueness (lemma 9): 3 good guns, unique line at 1 ply");
  auto r1 = check_lemma(9, 1);
  c.expect(r1.stages[0].examined == 6 && r1.stages[0].good == 3,
           "RG on open bucket: expected exactly 3 good of 6");
  c.expect(r1.survivors == 1, "expected exactly one surviving close line");
  c.expect(r1.canonical_identified, "survivor is not the canonical close");
  c.expect(r1.claim_holds, "lemma 9 claim did not hold at lookahead 1");
  c.expect(r1.minimal_lookahead.has_value() && *r1.minimal_lookahead == 1,
           "harness must report minimal sufficient lookahead = 1");
  c.expect(r1.to_text().find("minimal sufficient lookahead") != std::string::npos,
           "report must state the minimal sufficient lookahead");

  auto r0 = check_lemma(9, 0);
  c.expect(r0.survivors == 3 && !r0.claim_holds,
           "without lookahead all three good guns must survive");
}

void criterion4_end_to_end() {
  Criterion c(4, "end-to-end positive instances certify and clear 16+4B lines");

  const auto smallest = scratch_file("smallest.3p", emit_instance(kSmallest));
  auto small_run = run_cli("certify " + smallest.string() + " --auto --strict");
  c.expect(small_run.exit_code == 0, "strict s=1 instance: expected exit 0");
  c.expect(small_run.output.find("cleared 40 lines") != std::string::npos,
           "strict s=1 instance: expected 40 cleared lines");

  const auto worked = scratch_file("worked.3p", emit_instance(kWorked));
  auto worked_run = run_cli("certify " + worked.string() + " --auto");
  c.expect(worked_run.exit_code == 0, "lax s=3 instance: expected exit 0");
  c.expect(worked_run.output.find("cleared 40 lines") != std::string::npos,
           "lax s=3 instance: expected 40 cleared lines");

  // replay both traces in-process: no covered hole at any intermediate step,
  // and the fill column stays the only deep well
  for (const Instance3P& inst : {kSmallest, kWorked}) {
    auto partition = solve_3partition(inst);
    c.expect(partition.has_value(), "oracle found no partition");
    if (!partition) continue;
    const BoardLayout layout = layout_for(inst);
    Board board = build_board(inst);
    bool clean = true;
    for (const TraceStep& step : canonical_trace(inst, *partition)) {
      auto applied = apply_placement(board, step.placement);
      if (!applied) {
        clean = false;
        break;
      }
      board = applied->board;
      if (!covered_holes(board).empty()) clean = false;
      for (const Well& w : narrow_wells(board, 3))
        if (w.col != layout.fill_column()) clean = false;
    }
    c.expect(clean, "intermediate replay state had a hole or stray deep well");
    c.expect(board.empty() && board.cleared_total() == 16 + 4 * inst.B,
             "final board not empty with 16+4B cleared lines");
  }
}

void criterion5_oracle_equivalence() {
  Criterion c(5, "oracle equivalence over all lax-valid s=2, B<=13, a_i<=6");

  // independent oracle: scan all 2^6 assignments for a triple split
  const auto brute_exists = [](const Instance3P& inst) {
    std::vector<int> assign(inst.a.size(), 0);
    while (true) {
      long long s0 = 0, s1 = 0;
      int c0 = 0, c1 = 0;
      for (std::size_t i = 0; i < assign.size(); ++i) {
        if (assign[i]) {
          s1 += inst.a[i];
          ++c1;
        } else {
          s0 += inst.a[i];
          ++c0;
        }
      }
      if (s0 == inst.B && s1 == inst.B && c0 == 3 && c1 == 3) return true;
      std::size_t i = 0;
      while (i < assign.size() && assign[i] == 1) assign[i++] = 0;
      if (i == assign.size()) return false;
      assign[i] = 1;
    }
  };

  int instances = 0, positives = 0;
  bool all_agree = true, all_certify = true;
  std::vector<int> a(6);
  const auto visit = [&](const auto& self, std::size_t pos, int min_v) -> void {
    if (pos == 6) {
      long long sum = a[0] + a[1] + a[2] + a[3] + a[4] + a[5];
      if (sum % 2 != 0 || sum / 2 > 13) return;
      const Instance3P inst{2, static_cast<int>(sum / 2), a};
      if (!is_valid(inst, ValidateMode::Lax)) return;
      ++instances;
      auto solved = solve_3partition(inst);
      if (solved.has_value() != brute_exists(inst)) all_agree = false;
      if (solved) {
        ++positives;
        if (!certify(inst, *solved).success) all_certify = false;
      }
      return;
    }
    for (int v = min_v; v <= 6; ++v) {
      a[pos] = v;
      self(self, pos + 1, v);
    }
  };
  visit(visit, 0, 1);

  c.expect(instances > 100, "expected to enumerate over 100 instances");
  c.expect(all_agree, "solver disagreed with the exhaustive assignment scan");
  c.expect(all_certify, "a solver witness failed to certify");

  c.expect(!solve_3partition(kNegative).has_value(),
           "(2, 13, 4 4 4 4 4 6) must be unpartitionable");

  // the board search must stay honest within its budget: UNCLEARABLE or
  // BUDGET_EXCEEDED for the negative instance, never CLEARABLE
  SearchConfig config;
  config.node_budget = 60'000;
  config.prune_bad_states = true;
  config.rules = rules_for(layout_for(kNegative));
  auto verdict =
      search_clearable(build_board(kNegative), build_sequence(kNegative), config);
  c.expect(verdict.kind != SearchVerdict::Kind::Clearable,
           "search claimed the negative instance clearable");

  std::ostringstream note;
  note << instances << " instances, " << positives << " positive; negative board search: "
       << (verdict.kind == SearchVerdict::Kind::Unclearable ? "UNCLEARABLE"
                                                            : "BUDGET_EXCEEDED")
       << " after " << verdict.nodes_expanded << " nodes";
  c.info(note.str());
}

void criterion6_budget_identities() {
  Criterion c(6, "budget identities on 100 random valid instances (s<=5, B<=20)");
  std::mt19937 rng(20260810);
  std::uniform_int_distribution<int> s_dist(1, 5);
  std::uniform_int_distribution<int> B_dist(3, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const int s = s_dist(rng);
    const int B = B_dist(rng);
    std::vector<int> a(static_cast<std::size_t>(3 * s), 1);
    std::uniform_int_distribution<std::size_t> idx(0, a.size() - 1);
    for (int extra = s * B - 3 * s; extra > 0; --extra) ++a[idx(rng)];
    const Instance3P inst{s, B, a};
    if (!is_valid(inst, ValidateMode::Lax)) {
      c.expect(false, "generator produced an invalid instance");
      continue;
    }
    auto report = budget_report(inst);
    c.expect(4LL * report.sequence_length == report.fillable_cells,
             "4*|sequence| != fillable cells");
    c.expect(report.per_bucket_parts == 3 * (16 + 4LL * B),
             "per-bucket decomposition 8+12+12B+24+4 != 3*(16+4B)");
    c.expect(report.ok(), "budget report flagged a mismatch");
  }
}

void criterion7_engine_properties() {
  Criterion c(7, "engine properties over 1000 random placements");
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> width_dist(4, 12);
  std::uniform_int_distribution<int> height_dist(8, 16);
  std::uniform_int_distribution<int> kind_dist(0, 6);
  std::uniform_int_distribution<int> cell(0, 99);

  int applied = 0;
  while (applied < 1000) {
    const int w = width_dist(rng), h = height_dist(rng);
    Board board(w, h);
    std::uniform_int_distribution<int> gap(0, w - 1);
    for (int row = 0; row < h / 2; ++row) {
      const int forced_gap = gap(rng);
      for (int col = 0; col < w; ++col)
        if (col != forced_gap && cell(rng) < 55) board.set(col, row);
    }
    const PieceKind kind = kAllPieces[static_cast<std::size_t>(kind_dist(rng))];

    // enumeration matches the brute-force in-bounds set
    auto options = enumerate_placements(board, kind);
    std::size_t expected = 0;
    for (int o = 0; o < orientation_count(kind); ++o)
      if (piece_width(kind, o) <= w)
        expected += static_cast<std::size_t>(w - piece_width(kind, o) + 1);
    c.expect(options.size() == expected, "enumeration count mismatch");
    if (options.empty()) continue;

    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const Placement p = options[pick(rng)].placement;
    const int rest = drop_row(board, p.kind, p.orient, p.col);

    bool supported = false;
    for (const Cell& pc : piece_cells(p.kind, p.orient)) {
      const int row = rest + pc.row;
      if (row == 0 || (row - 1 < h && board.at(p.col + pc.col, row - 1)))
        supported = true;
    }
    c.expect(supported, "drop not maximal: piece floats");

    auto result = apply_placement(board, p);
    if (!result) continue;
    ++applied;
    c.expect(result->board.filled_count() ==
                 board.filled_count() + 4 - w * result->cleared,
             "cell conservation violated");
    for (int row = 0; row < h; ++row)
      c.expect(!result->board.row_full(row), "a full row persisted");
  }
}

void criterion8_search_soundness() {
  Criterion c(8, "search soundness on 50 random mini-boards (w<=5, <=6 pieces)");
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> kind_dist(0, 6);
  std::uniform_int_distribution<int> cell(0, 99);

  int clearable_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 3 + trial % 3;  // widths 3..5
    const int h = 8;
    Board board(w, h);
    std::uniform_int_distribution<int> gap(0, w - 1);
    if (trial % 2 == 0) {  // half start from prefilled stacks, half empty
      for (int row = 0; row < 2; ++row) {
        const int forced_gap = gap(rng);
        for (int col = 0; col < w; ++col)
          if (col != forced_gap && cell(rng) < 50) board.set(col, row);
      }
    }
    const int pieces = w == 5 ? 4 + trial % 2 : 4 + trial % 3;  // 4..6
    std::vector<PieceKind> sequence;
    for (int i = 0; i < pieces; ++i)
      sequence.push_back(kAllPieces[static_cast<std::size_t>(kind_dist(rng))]);

    SearchConfig complete;
    complete.transposition = false;
    complete.budget_prune = false;
    complete.node_budget = 30'000'000;
    auto slow = search_clearable(board, sequence, complete);

    SearchConfig sound;
    sound.transposition = true;
    sound.budget_prune = true;
    sound.node_budget = 30'000'000;
    auto fast = search_clearable(board, sequence, sound);

    c.expect(slow.kind != SearchVerdict::Kind::BudgetExceeded,
             "complete search ran out of budget");
    c.expect(slow.kind == fast.kind, "pruned and unpruned verdicts disagree");

    if (slow.kind == SearchVerdict::Kind::Clearable) ++clearable_count;
    for (const auto& verdict : {slow, fast}) {
      if (verdict.kind != SearchVerdict::Kind::Clearable) continue;
      Trace trace;
      for (const Placement& p : verdict.witness) trace.push_back({p, std::nullopt});
      c.expect(verify_trace(board, sequence, trace).success,
               "a clearable witness failed verification");
    }
  }

  // reduction-shaped boards: bad-state pruning must never lose a clearable
  // game that the complete search finds
  for (int digits = 1; digits <= 2; ++digits) {
    Board board(4, 4 * digits + 6);
    for (int r = 0; r < 4 * digits; ++r) board.set(0, r);
    std::vector<PieceKind> sequence;
    for (int d = 0; d < digits; ++d)
      for (PieceKind k : {PieceKind::T, PieceKind::T, PieceKind::RG})
        sequence.push_back(k);

    SearchConfig complete;
    complete.transposition = false;
    complete.budget_prune = false;
    auto slow = search_clearable(board, sequence, complete);

    SearchConfig pruned;
    pruned.prune_bad_states = true;
    pruned.rules = StateRules{std::nullopt, 4 * digits};
    auto fast = search_clearable(board, sequence, pruned);

    c.expect(slow.kind == SearchVerdict::Kind::Clearable,
             "digit wall bucket must be clearable");
    c.expect(fast.kind == SearchVerdict::Kind::Clearable,
             "bad-state pruning lost a clearable reduction board");
  }

  // and it clears a full instance end to end
  SearchConfig pruned;
  pruned.prune_bad_states = true;
  pruned.rules = rules_for(layout_for(kSmallest));
  pruned.node_budget = 500'000;
  auto verdict =
      search_clearable(build_board(kSmallest), build_sequence(kSmallest), pruned);
  c.expect(verdict.kind == SearchVerdict::Kind::Clearable,
           "pruned search failed to clear the smallest strict instance");
  if (verdict.kind == SearchVerdict::Kind::Clearable) {
    Trace trace;
    for (const Placement& p : verdict.witness) trace.push_back({p, std::nullopt});
    auto replay = verify_trace(build_board(kSmallest), build_sequence(kSmallest), trace);
    c.expect(replay.success && replay.cleared_lines == 40,
             "search witness does not match the certifier's outcome");
  }

  std::ostringstream note;
  note << "clearable mini-boards found: " << clearable_count;
  c.info(note.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 2;
  }
  g_cli_path = argv[1];

  criterion1_lemma_counts();
  criterion2_digit_uniqueness();
  criterion3_close_uniqueness();
  criterion4_end_to_end();
  criterion5_oracle_equivalence();
  criterion6_budget_identities();
  criterion7_engine_properties();
  criterion8_search_soundness();

  if (g_failures == 0)
    std::cout << "all acceptance criteria hold\n";
  else
    std::cout << g_failures << " criterion(s) failed\n";
  return g_failures == 0 ? 0 : 1;
}
