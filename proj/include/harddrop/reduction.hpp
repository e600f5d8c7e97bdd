#pragma once

#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "harddrop/engine.hpp"
#include "harddrop/gadgets.hpp"

namespace harddrop {

// ---------------------------------------------------------------------------
// Instances

/// A 3-partition instance: 3s positive integers that should split into s
/// groups summing to B each.
struct Instance3P {
  int s = 0;
  int B = 0;
  std::vector<int> a;
};

enum class ValidateMode { Lax, Strict };

struct Violation {
  int index = -1;  // -1 for instance-level violations
  std::string message;
};

/// Lax mode checks the shape (3s positive numbers summing to s*B); strict
/// mode additionally requires B/4 < a_i < B/2, which forces exactly three
/// numbers per group in any solution.
inline std::vector<Violation> validate(const Instance3P& inst, ValidateMode mode) {
  std::vector<Violation> out;
  if (inst.s < 1) out.push_back({-1, "s must be >= 1"});
  if (inst.B < 1) out.push_back({-1, "B must be >= 1"});
  if (inst.a.size() != static_cast<std::size_t>(3 * inst.s)) {
    std::ostringstream os;
    os << "expected " << 3 * inst.s << " numbers, got " << inst.a.size();
    out.push_back({-1, os.str()});
    return out;
  }
  long long sum = 0;
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    const int v = inst.a[i];
    sum += v;
    if (v < 1) {
      std::ostringstream os;
      os << "a[" << i << "] = " << v << " is not positive";
      out.push_back({static_cast<int>(i), os.str()});
      continue;
    }
    if (mode == ValidateMode::Strict) {
      if (4 * v <= inst.B) {
        std::ostringstream os;
        os << "a[" << i << "] = " << v << " violates a > B/4";
        out.push_back({static_cast<int>(i), os.str()});
      } else if (2 * v >= inst.B) {
        std::ostringstream os;
        os << "a[" << i << "] = " << v << " violates a < B/2";
        out.push_back({static_cast<int>(i), os.str()});
      }
    }
  }
  if (sum != static_cast<long long>(inst.s) * inst.B) {
    std::ostringstream os;
    os << "sum of numbers is " << sum << ", expected s*B = "
       << static_cast<long long>(inst.s) * inst.B;
    out.push_back({-1, os.str()});
  }
  return out;
}

inline bool is_valid(const Instance3P& inst, ValidateMode mode) {
  return validate(inst, mode).empty();
}

// ---------------------------------------------------------------------------
// Board layout
//
// Columns, left to right: a separator, then s buckets of (3 interior columns
// + separator), then the width-1 fill column and the right separator.
//
//   separator columns: {4b : 0 <= b <= s} and 4s+2
//   bucket b interior: columns 4b+1 .. 4b+3
//   fill column:       4s+1

struct BoardLayout {
  int s = 0;
  int B = 0;

  int width() const { return 4 * s + 3; }
  int bucket_height() const { return 16 + 4 * B; }
  int board_height() const { return bucket_height() + 5; }
  int fill_column() const { return 4 * s + 1; }
  int bucket_c0(int bucket) const { return 4 * bucket + 1; }

  bool is_separator(int col) const {
    return (col % 4 == 0 && col <= 4 * s) || col == 4 * s + 2;
  }

  std::optional<int> bucket_of(int col) const {
    if (col < 1 || col >= 4 * s || col % 4 == 0) return std::nullopt;
    return col / 4;
  }
};

inline BoardLayout layout_for(const Instance3P& inst) { return {inst.s, inst.B}; }

/// Recognizes boards shaped like a reduction output from the dimensions
/// alone: width 4s+3, height 16+4B+5.
inline std::optional<BoardLayout> infer_layout(const Board& board) {
  if (board.width() < 7 || (board.width() - 3) % 4 != 0) return std::nullopt;
  if (board.height() < 25 || (board.height() - 21) % 4 != 0) return std::nullopt;
  return BoardLayout{(board.width() - 3) / 4, (board.height() - 21) / 4};
}

namespace detail {

inline void require_lax_valid(const Instance3P& inst) {
  auto violations = validate(inst, ValidateMode::Lax);
  if (!violations.empty())
    throw std::invalid_argument("invalid instance: " + violations.front().message);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Construction

/// The initial board: separators solid up to the bucket height, every bucket
/// interior planted with a right gun and a left snake (the closed lock), the
/// fill column empty, and five empty buffer rows on top.
inline Board build_board(const Instance3P& inst) {
  detail::require_lax_valid(inst);
  const BoardLayout layout = layout_for(inst);
  Board board(layout.width(), layout.board_height());
  for (int col = 0; col < layout.width(); ++col)
    if (layout.is_separator(col))
      for (int row = 0; row < layout.bucket_height(); ++row) board.set(col, row);
  for (int b = 0; b < inst.s; ++b) {
    const int c0 = layout.bucket_c0(b);
    // planted right gun
    board.set(c0, 0);
    board.set(c0 + 1, 0);
    board.set(c0 + 2, 0);
    board.set(c0 + 2, 1);
    // planted left snake on top
    board.set(c0 + 1, 1);
    board.set(c0 + 1, 2);
    board.set(c0 + 2, 2);
    board.set(c0 + 2, 3);
  }
  return board;
}

/// Piece order: per number, a gun to open a bucket, then (T, T, RG) per unit
/// of the number, then (RG, LS) to close; after all numbers one gun per
/// bucket, then 4+B bars for the fill column.
inline std::vector<PieceKind> build_sequence(const Instance3P& inst) {
  detail::require_lax_valid(inst);
  std::vector<PieceKind> seq;
  seq.reserve(static_cast<std::size_t>(10 * inst.s + 3 * inst.s * inst.B + inst.B + 4));
  for (int v : inst.a) {
    seq.push_back(PieceKind::LG);
    for (int d = 0; d < v; ++d) {
      seq.push_back(PieceKind::T);
      seq.push_back(PieceKind::T);
      seq.push_back(PieceKind::RG);
    }
    seq.push_back(PieceKind::RG);
    seq.push_back(PieceKind::LS);
  }
  for (int b = 0; b < inst.s; ++b) seq.push_back(PieceKind::LG);
  for (int i = 0; i < 4 + inst.B; ++i) seq.push_back(PieceKind::I);
  return seq;
}

/// Everything the compilation produces: the initial board, the forced piece
/// order, and the column-role map.
struct ReductionOutput {
  Board board;
  std::vector<PieceKind> sequence;
  BoardLayout layout;
};

inline ReductionOutput compile_instance(const Instance3P& inst) {
  return {build_board(inst), build_sequence(inst), layout_for(inst)};
}

// ---------------------------------------------------------------------------
// Budget accounting

/// The exact-budget identities: the sequence supplies precisely the cells
/// needed to fill every bucket interior and the fill column up to the bucket
/// height, with nothing to spare.
struct BudgetReport {
  int sequence_length = 0;
  long long piece_cells = 0;
  long long fillable_cells = 0;
  long long per_bucket_parts = 0;  // 8 + 12 + 12B + 24 + 4
  long long per_bucket_capacity = 0;  // 3 * (16 + 4B)

  bool ok() const {
    return piece_cells == fillable_cells && per_bucket_parts == per_bucket_capacity;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "pieces: " << sequence_length << " (" << piece_cells << " cells)\n"
       << "fillable cells below the bucket height: " << fillable_cells << "\n"
       << "per-bucket: 8 planted + 12 open + 12B digit + 24 close + 4 final = "
       << per_bucket_parts << " vs capacity 3*(16+4B) = " << per_bucket_capacity
       << "\n"
       << (ok() ? "budget exact" : "BUDGET MISMATCH") << "\n";
    return os.str();
  }
};

inline BudgetReport budget_report(const Instance3P& inst) {
  detail::require_lax_valid(inst);
  const BoardLayout layout = layout_for(inst);
  BudgetReport report;
  report.sequence_length = static_cast<int>(build_sequence(inst).size());
  report.piece_cells = 4LL * report.sequence_length;
  const long long bucket_area = 3LL * layout.bucket_height();
  report.fillable_cells =
      bucket_area * inst.s - 8LL * inst.s + layout.bucket_height();
  report.per_bucket_parts = 8 + 12 + 12LL * inst.B + 24 + 4;
  report.per_bucket_capacity = bucket_area;
  return report;
}

}  // namespace harddrop
