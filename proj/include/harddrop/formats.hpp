#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "harddrop/certify.hpp"
#include "harddrop/engine.hpp"
#include "harddrop/reduction.hpp"

// Line-oriented text formats:
//
//   .3p   line 1 "s B", line 2 the 3s numbers; '#' comments
//   .brd  line 1 "W H", then H rows top-first of '#' (filled) and '.' (empty);
//         no comments, since '#' marks cells
//   .seq  whitespace-separated piece tokens LG RG I SQ LS RS T; '#' comments
//   .trc  one "KIND orient col" per line; an optional "# PHASE" comment tags
//         the placement's role in the canonical strategy
//   .part whitespace-separated bucket indices, one per number; '#' comments

namespace harddrop {

struct ParseError : std::runtime_error {
  explicit ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line(line) {}
  int line;
};

namespace detail {

/// Input lines with comments stripped, paired with their 1-based numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(number, line);
  }
  return out;
}

inline std::vector<long long> numbers_on(const std::pair<int, std::string>& line) {
  std::istringstream is(line.second);
  std::vector<long long> values;
  long long v;
  while (is >> v) values.push_back(v);
  if (!is.eof()) throw ParseError(line.first, "expected integers");
  return values;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instances (.3p)

inline Instance3P parse_instance(std::istream& in) {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(0, "empty instance file");
  auto header = detail::numbers_on(lines[0]);
  if (header.size() != 2)
    throw ParseError(lines[0].first, "header must be \"s B\"");
  Instance3P inst;
  inst.s = static_cast<int>(header[0]);
  inst.B = static_cast<int>(header[1]);
  for (std::size_t i = 1; i < lines.size(); ++i)
    for (long long v : detail::numbers_on(lines[i]))
      inst.a.push_back(static_cast<int>(v));
  if (inst.a.size() != static_cast<std::size_t>(3 * inst.s))
    throw ParseError(lines.back().first,
                     "expected " + std::to_string(3 * inst.s) + " numbers, got " +
                         std::to_string(inst.a.size()));
  return inst;
}

inline std::string emit_instance(const Instance3P& inst) {
  std::ostringstream os;
  os << inst.s << " " << inst.B << "\n";
  for (std::size_t i = 0; i < inst.a.size(); ++i)
    os << (i ? " " : "") << inst.a[i];
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Boards (.brd)

inline Board parse_board(std::istream& in) {
  std::vector<std::pair<int, std::string>> lines;
  {
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.emplace_back(number, raw);
    }
  }
  if (lines.empty()) throw ParseError(0, "empty board file");
  auto header = detail::numbers_on(lines[0]);
  if (header.size() != 2 || header[0] < 1 || header[1] < 1)
    throw ParseError(lines[0].first, "header must be \"W H\"");
  const int width = static_cast<int>(header[0]);
  const int height = static_cast<int>(header[1]);
  if (width > 64) throw ParseError(lines[0].first, "width above 64 is unsupported");
  if (lines.size() != static_cast<std::size_t>(height) + 1)
    throw ParseError(lines[0].first,
                     "expected " + std::to_string(height) + " board rows");
  Board board(width, height);
  for (int i = 0; i < height; ++i) {
    const auto& [line_no, text] = lines[static_cast<std::size_t>(i) + 1];
    std::string row;
    for (char c : text)
      if (c != ' ' && c != '\t' && c != '\r') row.push_back(c);
    if (row.size() != static_cast<std::size_t>(width))
      throw ParseError(line_no, "row must have exactly " + std::to_string(width) +
                                    " cells");
    const int board_row = height - 1 - i;  // rows are stored top-first
    for (int col = 0; col < width; ++col) {
      if (row[static_cast<std::size_t>(col)] == '#')
        board.set(col, board_row);
      else if (row[static_cast<std::size_t>(col)] != '.')
        throw ParseError(line_no, "cells must be '#' or '.'");
    }
    if (board.row_full(board_row))
      throw ParseError(line_no, "row is completely full; full rows cannot persist");
  }
  return board;
}

inline std::string emit_board(const Board& board) {
  std::ostringstream os;
  os << board.width() << " " << board.height() << "\n";
  for (int row = board.height() - 1; row >= 0; --row) {
    for (int col = 0; col < board.width(); ++col)
      os << (board.at(col, row) ? '#' : '.');
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Sequences (.seq)

inline std::vector<PieceKind> parse_sequence(std::istream& in) {
  std::vector<PieceKind> seq;
  for (const auto& line : detail::content_lines(in)) {
    std::istringstream is(line.second);
    std::string token;
    while (is >> token) {
      auto kind = kind_from_token(token);
      if (!kind) throw ParseError(line.first, "unknown piece token \"" + token + "\"");
      seq.push_back(*kind);
    }
  }
  return seq;
}

inline std::string emit_sequence(const std::vector<PieceKind>& seq) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.size(); ++i)
    os << (i ? " " : "") << kind_token(seq[i]);
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Traces (.trc)

inline Trace parse_trace(std::istream& in) {
  Trace trace;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::optional<Phase> phase;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      std::istringstream comment(line.substr(hash + 1));
      std::string token;
      if (comment >> token) phase = phase_from_token(token);
      line.resize(hash);
    }
    std::istringstream is(line);
    std::string token;
    if (!(is >> token)) continue;
    auto kind = kind_from_token(token);
    if (!kind) throw ParseError(number, "unknown piece token \"" + token + "\"");
    int orient, col;
    if (!(is >> orient >> col))
      throw ParseError(number, "expected \"KIND orient col\"");
    std::string rest;
    if (is >> rest) throw ParseError(number, "trailing input \"" + rest + "\"");
    if (orient < 0 || orient >= orientation_count(*kind))
      throw ParseError(number, "piece " + token + " has no orientation " +
                                   std::to_string(orient));
    trace.push_back({{*kind, orient, col}, phase});
  }
  return trace;
}

inline std::string emit_trace(const Trace& trace) {
  std::ostringstream os;
  for (const TraceStep& step : trace) {
    os << kind_token(step.placement.kind) << " " << step.placement.orient << " "
       << step.placement.col;
    if (step.phase) os << " # " << phase_name(*step.phase);
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Partitions (.part)

inline Partition parse_partition(std::istream& in) {
  Partition partition;
  for (const auto& line : detail::content_lines(in))
    for (long long v : detail::numbers_on(line))
      partition.assign.push_back(static_cast<int>(v));
  return partition;
}

inline std::string emit_partition(const Partition& partition) {
  std::ostringstream os;
  for (std::size_t i = 0; i < partition.assign.size(); ++i)
    os << (i ? " " : "") << partition.assign[i];
  os << "\n";
  return os.str();
}

// string convenience wrappers

inline Instance3P parse_instance(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}
inline Board parse_board(const std::string& text) {
  std::istringstream is(text);
  return parse_board(is);
}
inline std::vector<PieceKind> parse_sequence(const std::string& text) {
  std::istringstream is(text);
  return parse_sequence(is);
}
inline Trace parse_trace(const std::string& text) {
  std::istringstream is(text);
  return parse_trace(is);
}
inline Partition parse_partition(const std::string& text) {
  std::istringstream is(text);
  return parse_partition(is);
}

}  // namespace harddrop
