#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "harddrop/gadgets.hpp"
#include "harddrop/reduction.hpp"

namespace harddrop {

// ---------------------------------------------------------------------------
// Partitions and traces

/// A claimed solution: one bucket index per number, in input order. Every
/// bucket must take exactly three numbers summing to B; the board budgets
/// one open and one close per number, so a bucket taking more or fewer
/// numbers than three cannot fill its column span exactly.
struct Partition {
  std::vector<int> assign;
};

inline std::vector<Violation> validate_partition(const Instance3P& inst,
                                                 const Partition& partition) {
  std::vector<Violation> out;
  if (partition.assign.size() != inst.a.size()) {
    std::ostringstream os;
    os << "expected " << inst.a.size() << " bucket indices, got "
       << partition.assign.size();
    out.push_back({-1, os.str()});
    return out;
  }
  std::vector<long long> sums(static_cast<std::size_t>(inst.s), 0);
  std::vector<int> counts(static_cast<std::size_t>(inst.s), 0);
  for (std::size_t i = 0; i < partition.assign.size(); ++i) {
    const int b = partition.assign[i];
    if (b < 0 || b >= inst.s) {
      std::ostringstream os;
      os << "assignment " << i << " names bucket " << b << " outside [0, "
         << inst.s << ")";
      out.push_back({static_cast<int>(i), os.str()});
      return out;
    }
    sums[static_cast<std::size_t>(b)] += inst.a[i];
    ++counts[static_cast<std::size_t>(b)];
  }
  for (int b = 0; b < inst.s; ++b) {
    if (sums[static_cast<std::size_t>(b)] != inst.B) {
      std::ostringstream os;
      os << "bucket " << b << " sums to " << sums[static_cast<std::size_t>(b)]
         << ", expected " << inst.B;
      out.push_back({b, os.str()});
    }
    if (counts[static_cast<std::size_t>(b)] != 3) {
      std::ostringstream os;
      os << "bucket " << b << " takes " << counts[static_cast<std::size_t>(b)]
         << " numbers, expected 3";
      out.push_back({b, os.str()});
    }
  }
  return out;
}

enum class Phase { Open, Digit, Close, Final, Fill };

inline const char* phase_name(Phase p) {
  switch (p) {
    case Phase::Open: return "OPEN";
    case Phase::Digit: return "DIGIT";
    case Phase::Close: return "CLOSE";
    case Phase::Final: return "FINAL";
    case Phase::Fill: return "FILL";
  }
  return "?";
}

inline std::optional<Phase> phase_from_token(const std::string& token) {
  for (Phase p : {Phase::Open, Phase::Digit, Phase::Close, Phase::Final, Phase::Fill})
    if (token == phase_name(p)) return p;
  return std::nullopt;
}

struct TraceStep {
  Placement placement;
  std::optional<Phase> phase;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// The polynomial certificate: one placement per sequence piece.
using Trace = std::vector<TraceStep>;

// ---------------------------------------------------------------------------
// Canonical strategy

/// The clearing walkthrough for a valid partition: open the number's bucket,
/// lay its digits, close, and after all numbers reopen every bucket once and
/// drop the bars down the fill column. Throws if the partition is invalid.
inline Trace canonical_trace(const Instance3P& inst, const Partition& partition) {
  detail::require_lax_valid(inst);
  auto violations = validate_partition(inst, partition);
  if (!violations.empty())
    throw std::invalid_argument("invalid partition: " + violations.front().message);

  const BoardLayout layout = layout_for(inst);
  const auto shifted = [](const Placement& p, int c0) {
    return Placement{p.kind, p.orient, p.col + c0};
  };

  Trace trace;
  trace.reserve(build_sequence(inst).size());
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    const int c0 = layout.bucket_c0(partition.assign[i]);
    trace.push_back({shifted(kOpenerPlacement, c0), Phase::Open});
    for (int d = 0; d < inst.a[i]; ++d)
      for (const Placement& p : kDigitPlacements)
        trace.push_back({shifted(p, c0), Phase::Digit});
    for (const Placement& p : kClosePlacements)
      trace.push_back({shifted(p, c0), Phase::Close});
  }
  for (int b = 0; b < inst.s; ++b)
    trace.push_back({shifted(kOpenerPlacement, layout.bucket_c0(b)), Phase::Final});
  for (int i = 0; i < 4 + inst.B; ++i)
    trace.push_back({{PieceKind::I, 1, layout.fill_column()}, Phase::Fill});
  return trace;
}

// ---------------------------------------------------------------------------
// Replay

struct ReplayFailure {
  std::size_t index = 0;
  std::string reason;
  Board board;  // state when the failure was detected
};

struct ReplayVerdict {
  bool success = false;
  int cleared_lines = 0;
  Board final_board;
  std::optional<ReplayFailure> first_failure;
};

/// Replays a trace against the sequence. Success means: kinds agree step by
/// step, nothing tops out, all pieces are consumed, and the board ends empty.
inline ReplayVerdict verify_trace(const Board& board,
                                  const std::vector<PieceKind>& sequence,
                                  const Trace& trace) {
  ReplayVerdict verdict{false, 0, board, std::nullopt};
  Board current = board;
  const std::size_t steps = std::min(sequence.size(), trace.size());
  for (std::size_t i = 0; i < steps; ++i) {
    const Placement& p = trace[i].placement;
    if (p.kind != sequence[i]) {
      std::ostringstream os;
      os << "piece " << i << " is " << kind_token(sequence[i]) << " but the trace places "
         << kind_token(p.kind);
      verdict.first_failure = ReplayFailure{i, os.str(), current};
      verdict.final_board = current;
      return verdict;
    }
    auto applied = apply_placement(current, p);
    if (!applied) {
      verdict.first_failure = ReplayFailure{i, "top-out", current};
      verdict.final_board = current;
      return verdict;
    }
    current = std::move(applied->board);
  }
  verdict.final_board = current;
  verdict.cleared_lines = current.cleared_total();
  if (trace.size() < sequence.size()) {
    std::ostringstream os;
    os << "pieces remaining: trace covers " << trace.size() << " of "
       << sequence.size();
    verdict.first_failure = ReplayFailure{trace.size(), os.str(), current};
    return verdict;
  }
  if (trace.size() > sequence.size()) {
    verdict.first_failure =
        ReplayFailure{sequence.size(), "trace longer than the sequence", current};
    return verdict;
  }
  if (!current.empty()) {
    verdict.first_failure =
        ReplayFailure{sequence.size(), "board not empty after the last piece", current};
    return verdict;
  }
  verdict.success = true;
  return verdict;
}

// ---------------------------------------------------------------------------
// Certification

struct CertifyVerdict {
  bool success = false;
  std::string failure;
  Trace trace;
  std::optional<ReplayVerdict> replay;  // absent when rejected before replay
};

/// Builds the board and sequence, derives the canonical trace from the
/// partition, and replays it. A success certifies the instance positive.
inline CertifyVerdict certify(const Instance3P& inst, const Partition& partition) {
  CertifyVerdict verdict;
  auto inst_violations = validate(inst, ValidateMode::Lax);
  if (!inst_violations.empty()) {
    verdict.failure = "invalid instance: " + inst_violations.front().message;
    return verdict;
  }
  auto part_violations = validate_partition(inst, partition);
  if (!part_violations.empty()) {
    verdict.failure = "invalid partition: " + part_violations.front().message;
    return verdict;
  }
  verdict.trace = canonical_trace(inst, partition);
  verdict.replay = verify_trace(build_board(inst), build_sequence(inst), verdict.trace);
  verdict.success = verdict.replay->success;
  if (!verdict.success && verdict.replay->first_failure)
    verdict.failure = verdict.replay->first_failure->reason;
  return verdict;
}

}  // namespace harddrop
