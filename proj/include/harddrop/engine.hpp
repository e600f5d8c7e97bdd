#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace harddrop {

// ---------------------------------------------------------------------------
// Pieces

/// The seven tetrominoes: left/right gun (J/L), bar, square, left/right
/// snake (S/Z) and T.
enum class PieceKind : std::uint8_t { LG = 0, RG, I, Sq, LS, RS, T };

inline constexpr std::array<PieceKind, 7> kAllPieces = {
    PieceKind::LG, PieceKind::RG, PieceKind::I,  PieceKind::Sq,
    PieceKind::LS, PieceKind::RS, PieceKind::T};

inline const char* kind_token(PieceKind kind) {
  switch (kind) {
    case PieceKind::LG: return "LG";
    case PieceKind::RG: return "RG";
    case PieceKind::I:  return "I";
    case PieceKind::Sq: return "SQ";
    case PieceKind::LS: return "LS";
    case PieceKind::RS: return "RS";
    case PieceKind::T:  return "T";
  }
  return "?";
}

inline std::optional<PieceKind> kind_from_token(const std::string& token) {
  for (PieceKind k : kAllPieces)
    if (token == kind_token(k)) return k;
  return std::nullopt;
}

struct Cell {
  int col = 0;
  int row = 0;
  friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

namespace detail {

struct PieceTable {
  int orientations;
  std::array<std::array<Cell, 4>, 4> cells;
};

// Canonical rotation tables. Offsets are (col, row), row 0 at the bottom;
// every orientation is normalized so that min col = min row = 0.
inline constexpr std::array<PieceTable, 7> kPieceTables = {{
    // LG: flat + top-left foot, body + top-right foot, ...
    {4,
     {{{{{0, 0}, {1, 0}, {2, 0}, {0, 1}}},
       {{{0, 0}, {0, 1}, {0, 2}, {1, 2}}},
       {{{2, 0}, {0, 1}, {1, 1}, {2, 1}}},
       {{{1, 0}, {1, 1}, {1, 2}, {0, 0}}}}}},
    // RG: flat + top-right foot, body + top-left foot, ...
    {4,
     {{{{{0, 0}, {1, 0}, {2, 0}, {2, 1}}},
       {{{1, 0}, {1, 1}, {1, 2}, {0, 2}}},
       {{{0, 0}, {0, 1}, {1, 1}, {2, 1}}},
       {{{0, 0}, {0, 1}, {0, 2}, {1, 0}}}}}},
    // I: horizontal, vertical
    {2,
     {{{{{0, 0}, {1, 0}, {2, 0}, {3, 0}}},
       {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},
       {},
       {}}}},
    // Sq
    {1, {{{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}}, {}, {}, {}}}},
    // LS: vertical (lower pair left, rising right), horizontal
    {2,
     {{{{{0, 0}, {0, 1}, {1, 1}, {1, 2}}},
       {{{1, 0}, {2, 0}, {0, 1}, {1, 1}}},
       {},
       {}}}},
    // RS: mirror of LS
    {2,
     {{{{{1, 0}, {1, 1}, {0, 1}, {0, 2}}},
       {{{0, 0}, {1, 0}, {1, 1}, {2, 1}}},
       {},
       {}}}},
    // T: stem up, stem left, stem down, stem right
    {4,
     {{{{{0, 0}, {1, 0}, {2, 0}, {1, 1}}},
       {{{1, 0}, {1, 1}, {1, 2}, {0, 1}}},
       {{{1, 0}, {0, 1}, {1, 1}, {2, 1}}},
       {{{0, 0}, {0, 1}, {0, 2}, {1, 1}}}}}},
}};

}  // namespace detail

inline int orientation_count(PieceKind kind) {
  return detail::kPieceTables[static_cast<std::size_t>(kind)].orientations;
}

/// Normalized cell offsets of one orientation. Throws std::out_of_range for
/// an orientation index the piece does not have.
inline const std::array<Cell, 4>& piece_cells(PieceKind kind, int orient) {
  const auto& table = detail::kPieceTables[static_cast<std::size_t>(kind)];
  if (orient < 0 || orient >= table.orientations)
    throw std::out_of_range(std::string("piece ") + kind_token(kind) +
                            " has no orientation " + std::to_string(orient));
  return table.cells[static_cast<std::size_t>(orient)];
}

inline int piece_width(PieceKind kind, int orient) {
  int w = 0;
  for (const Cell& c : piece_cells(kind, orient)) w = std::max(w, c.col + 1);
  return w;
}

inline int piece_height(PieceKind kind, int orient) {
  int h = 0;
  for (const Cell& c : piece_cells(kind, orient)) h = std::max(h, c.row + 1);
  return h;
}

/// A player's entire decision for one piece: orientation plus the leftmost
/// occupied column. The piece then descends straight down.
struct Placement {
  PieceKind kind = PieceKind::I;
  int orient = 0;
  int col = 0;
  friend constexpr bool operator==(const Placement&, const Placement&) = default;
};

// ---------------------------------------------------------------------------
// Board

/// Occupancy grid with row 0 at the bottom. Full rows are removed eagerly by
/// apply_placement, so a Board in circulation never holds a complete row.
/// Rows are stored as bitmasks, which caps the width at 64 columns.
class Board {
 public:
  Board(int width, int height)
      : width_(width), height_(height), rows_(static_cast<std::size_t>(height), 0) {
    if (width < 1 || height < 1)
      throw std::invalid_argument("board dimensions must be positive");
    if (width > 64)
      throw std::invalid_argument("board width above 64 columns is unsupported");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int cleared_total() const { return cleared_total_; }

  bool at(int col, int row) const {
    return (rows_[static_cast<std::size_t>(row)] >> col) & 1u;
  }

  void set(int col, int row) {
    rows_[static_cast<std::size_t>(row)] |= std::uint64_t{1} << col;
  }

  bool row_full(int row) const {
    return rows_[static_cast<std::size_t>(row)] == full_mask();
  }

  bool row_empty(int row) const { return rows_[static_cast<std::size_t>(row)] == 0; }

  bool empty() const {
    for (std::uint64_t r : rows_)
      if (r != 0) return false;
    return true;
  }

  int filled_count() const {
    int n = 0;
    for (std::uint64_t r : rows_) n += __builtin_popcountll(r);
    return n;
  }

  /// One above the topmost filled cell of a column; 0 for an empty column.
  /// This is the surface a descending piece can reach, covered holes included.
  int column_height(int col) const {
    for (int row = height_ - 1; row >= 0; --row)
      if (at(col, row)) return row + 1;
    return 0;
  }

  int occupied_rows() const {
    int n = 0;
    for (std::uint64_t r : rows_) n += (r != 0);
    return n;
  }

  /// Removes every full row; rows above shift down by the number of removed
  /// rows beneath them. Returns the count removed.
  int remove_full_rows() {
    int cleared = 0;
    std::size_t dst = 0;
    for (std::size_t src = 0; src < rows_.size(); ++src) {
      if (rows_[src] == full_mask()) {
        ++cleared;
      } else {
        rows_[dst++] = rows_[src];
      }
    }
    for (; dst < rows_.size(); ++dst) rows_[dst] = 0;
    cleared_total_ += cleared;
    return cleared;
  }

  const std::vector<std::uint64_t>& rows() const { return rows_; }

  friend bool operator==(const Board&, const Board&) = default;

 private:
  std::uint64_t full_mask() const {
    return width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
  }

  int width_;
  int height_;
  std::vector<std::uint64_t> rows_;
  int cleared_total_ = 0;
};

// ---------------------------------------------------------------------------
// Placement mechanics

/// Bottom row offset of a piece dropped straight down in column `col`.
/// The piece descends from above the stack, so it rests on each column's
/// surface (covered holes cannot be entered from the side).
inline int drop_row(const Board& board, PieceKind kind, int orient, int col) {
  const auto& cells = piece_cells(kind, orient);
  if (col < 0 || col + piece_width(kind, orient) > board.width())
    throw std::invalid_argument(std::string("piece ") + kind_token(kind) +
                                " orientation " + std::to_string(orient) +
                                " out of bounds at column " + std::to_string(col));
  int rest = 0;
  for (const Cell& c : cells)
    rest = std::max(rest, board.column_height(col + c.col) - c.row);
  return rest;
}

struct ApplyResult {
  Board board;
  int cleared = 0;
};

/// Fixes the piece at its drop row and removes full rows. Returns nullopt on
/// top-out (some resting cell would lie at or above the board top); the input
/// board is untouched either way.
inline std::optional<ApplyResult> apply_placement(const Board& board,
                                                  const Placement& p) {
  const int rest = drop_row(board, p.kind, p.orient, p.col);
  const auto& cells = piece_cells(p.kind, p.orient);
  for (const Cell& c : cells)
    if (rest + c.row >= board.height()) return std::nullopt;
  ApplyResult result{board, 0};
  for (const Cell& c : cells) result.board.set(p.col + c.col, rest + c.row);
  result.cleared = result.board.remove_full_rows();
  return result;
}

struct PlacementOption {
  Placement placement;
  bool tops_out = false;
};

/// Every horizontally in-bounds (orientation, column) pair, orientation-major
/// then column ascending, each marked with whether it would top out.
inline std::vector<PlacementOption> enumerate_placements(const Board& board,
                                                         PieceKind kind) {
  std::vector<PlacementOption> out;
  for (int orient = 0; orient < orientation_count(kind); ++orient) {
    const int w = piece_width(kind, orient);
    const int h = piece_height(kind, orient);
    for (int col = 0; col + w <= board.width(); ++col) {
      const int rest = drop_row(board, kind, orient, col);
      out.push_back({{kind, orient, col}, rest + h > board.height()});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structural diagnostics

/// Empty cells with at least one filled cell above them in the same column.
/// Under straight-down drops such cells can never be filled from above.
inline std::vector<Cell> covered_holes(const Board& board) {
  std::vector<Cell> holes;
  for (int col = 0; col < board.width(); ++col) {
    const int top = board.column_height(col);
    for (int row = 0; row < top; ++row)
      if (!board.at(col, row)) holes.push_back({col, row});
  }
  return holes;
}

struct Well {
  int col = 0;
  int bottom = 0;
  int depth = 0;
  friend constexpr bool operator==(const Well&, const Well&) = default;
};

/// Width-1 open shafts of depth >= min_depth: empty column segments open from
/// above whose left and right neighbors (or the board edge) are filled at
/// every level of the segment.
inline std::vector<Well> narrow_wells(const Board& board, int min_depth) {
  if (min_depth < 1) throw std::invalid_argument("min_depth must be >= 1");
  std::vector<Well> wells;
  const auto side_filled = [&](int col, int row) {
    return col < 0 || col >= board.width() || board.at(col, row);
  };
  for (int col = 0; col < board.width(); ++col) {
    const int bottom = board.column_height(col);
    int depth = 0;
    for (int row = bottom; row < board.height(); ++row) {
      if (!side_filled(col - 1, row) || !side_filled(col + 1, row)) break;
      ++depth;
    }
    if (depth >= min_depth) wells.push_back({col, bottom, depth});
  }
  return wells;
}

}  // namespace harddrop
