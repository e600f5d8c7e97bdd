#pragma once

#include <sstream>
#include <string>

#include "harddrop/engine.hpp"
#include "harddrop/reduction.hpp"

namespace harddrop {

/// '#'/'.' grid, top row first. Same board, same bytes.
inline std::string render_board(const Board& board) {
  std::ostringstream os;
  for (int row = board.height() - 1; row >= 0; --row) {
    for (int col = 0; col < board.width(); ++col)
      os << (board.at(col, row) ? '#' : '.');
    os << "\n";
  }
  return os.str();
}

/// Column-role ruler for reduction-shaped boards: '|' separators, the bucket
/// index for interior columns, 'F' for the fill column.
inline std::string render_ruler(const BoardLayout& layout) {
  std::string ruler;
  for (int col = 0; col < layout.width(); ++col) {
    if (layout.is_separator(col))
      ruler.push_back('|');
    else if (col == layout.fill_column())
      ruler.push_back('F');
    else
      ruler.push_back(static_cast<char>('0' + *layout.bucket_of(col) % 10));
  }
  ruler.push_back('\n');
  return ruler;
}

/// Grid plus the ruler when the dimensions look like a reduction board.
inline std::string render_with_roles(const Board& board) {
  std::string out = render_board(board);
  if (auto layout = infer_layout(board)) out += render_ruler(*layout);
  return out;
}

}  // namespace harddrop
