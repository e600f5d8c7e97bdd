#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "harddrop/engine.hpp"

namespace harddrop {

// ---------------------------------------------------------------------------
// Bucket model
//
// One bucket is a 3-column interior flanked by solid separators. Its local
// state, as long as it holds no covered holes, is fully described by the
// three column heights above a common base.

struct BucketProfile {
  std::array<int, 3> heights{0, 0, 0};

  bool is_flat() const {
    return heights[0] == heights[1] && heights[1] == heights[2];
  }

  /// Matches (base+1, base+3, base+4); returns the base when it does.
  std::optional<int> closed_base() const {
    const int base = heights[0] - 1;
    if (base >= 0 && heights[1] == base + 3 && heights[2] == base + 4)
      return base;
    return std::nullopt;
  }

  friend constexpr bool operator==(const BucketProfile&, const BucketProfile&) = default;
};

/// The planted lock left by a right gun with a left snake on top.
inline constexpr BucketProfile kClosedProfile{{1, 3, 4}};

/// A placement outcome inside one bucket. HOLE takes precedence over WELL.
enum class Badness { Good, Hole, Well };

inline const char* badness_name(Badness b) {
  switch (b) {
    case Badness::Good: return "GOOD";
    case Badness::Hole: return "HOLE";
    case Badness::Well: return "WELL";
  }
  return "?";
}

/// A width-1 shaft at least this deep next to a separator or a taller column
/// is flagged WELL: anything shallower is still closable by guns or snakes.
inline constexpr int kWellFlagDepth = 4;

/// Depth at which only a vertical I fills a width-1 shaft hole-free.
inline constexpr int kIOnlyWellDepth = 3;

// Canonical gadget placements, columns relative to the bucket interior.
inline constexpr Placement kOpenerPlacement{PieceKind::LG, 1, 0};
inline constexpr std::array<Placement, 3> kDigitPlacements = {{
    {PieceKind::T, 0, 0},
    {PieceKind::T, 3, 0},
    {PieceKind::RG, 1, 1},
}};
inline constexpr std::array<Placement, 2> kClosePlacements = {{
    {PieceKind::RG, 0, 0},
    {PieceKind::LS, 0, 1},
}};

namespace detail {

/// Embeds a bucket interior at the bottom of a tall 4-column board. Columns
/// 0..2 are the interior; column 3 stays empty so that no interior row can
/// ever complete, exactly as in a full board where the fill column and the
/// other buckets are unfilled. Pieces are only placed in columns 0..2, so
/// drops behave as between two separators.
inline Board embed_profile(const BucketProfile& profile, int headroom = 12) {
  const int top = *std::max_element(profile.heights.begin(), profile.heights.end());
  for (int h : profile.heights)
    if (h < 0) throw std::invalid_argument("bucket profile heights must be >= 0");
  Board board(4, top + headroom);
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < profile.heights[c]; ++r) board.set(c, r);
  return board;
}

struct LocalState {
  Board board;
  BucketProfile profile;  // meaningful only while the state has no holes
};

inline std::vector<Cell> interior_holes(const Board& board) {
  std::vector<Cell> holes;
  for (const Cell& h : covered_holes(board))
    if (h.col < 3) holes.push_back(h);
  return holes;
}

inline BucketProfile interior_heights(const Board& board) {
  return BucketProfile{{board.column_height(0), board.column_height(1),
                        board.column_height(2)}};
}

/// Shaft depth per interior column from solid heights, separators on both
/// sides acting as walls of unbounded height.
inline int shaft_depth(const BucketProfile& p, int col) {
  const int left = col == 0 ? 1 << 20 : p.heights[col - 1];
  const int right = col == 2 ? 1 << 20 : p.heights[col + 1];
  return std::max(0, std::min(left, right) - p.heights[col]);
}

}  // namespace detail

struct LocalOutcome {
  Placement placement;  // column relative to the bucket interior
  int rest_row = 0;
  Badness badness = Badness::Good;
  BucketProfile profile;    // resulting heights (surface) for any outcome
  std::vector<Cell> holes;  // nonempty iff badness == Hole
};

/// All placements of `kind` that fit the 3-wide interior, classified.
/// Order is orientation-major, then column ascending.
inline std::vector<LocalOutcome> local_placements(const BucketProfile& profile,
                                                  PieceKind kind) {
  const Board base = detail::embed_profile(profile);
  std::vector<LocalOutcome> out;
  for (int orient = 0; orient < orientation_count(kind); ++orient) {
    for (int col = 0; col + piece_width(kind, orient) <= 3; ++col) {
      const Placement p{kind, orient, col};
      auto applied = apply_placement(base, p);
      if (!applied || applied->cleared != 0)
        throw std::logic_error("bucket embedding overflowed");
      LocalOutcome outcome;
      outcome.placement = p;
      outcome.rest_row = drop_row(base, kind, orient, col);
      outcome.holes = detail::interior_holes(applied->board);
      outcome.profile = detail::interior_heights(applied->board);
      if (!outcome.holes.empty()) {
        outcome.badness = Badness::Hole;
      } else {
        bool new_deep_shaft = false;
        for (int c = 0; c < 3; ++c)
          if (detail::shaft_depth(outcome.profile, c) >= kWellFlagDepth &&
              detail::shaft_depth(profile, c) < kWellFlagDepth)
            new_deep_shaft = true;
        outcome.badness = new_deep_shaft ? Badness::Well : Badness::Good;
      }
      out.push_back(std::move(outcome));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gadget transitions

enum class Gadget { Open, Digit, Close, Final };

inline const char* gadget_name(Gadget g) {
  switch (g) {
    case Gadget::Open: return "OPEN";
    case Gadget::Digit: return "DIGIT";
    case Gadget::Close: return "CLOSE";
    case Gadget::Final: return "FINAL";
  }
  return "?";
}

/// Replays the canonical placements of one gadget on the profile and returns
/// the outgoing profile. Throws if the entry profile does not match the
/// gadget (closed for OPEN/FINAL, flat for DIGIT/CLOSE) or if any step of the
/// replay were to create a hole or a deep shaft.
inline BucketProfile gadget_transition(const BucketProfile& profile, Gadget gadget) {
  std::vector<Placement> placements;
  switch (gadget) {
    case Gadget::Open:
    case Gadget::Final:
      if (!profile.closed_base())
        throw std::invalid_argument(std::string(gadget_name(gadget)) +
                                    " requires a closed entry profile");
      placements.push_back(kOpenerPlacement);
      break;
    case Gadget::Digit:
      if (!profile.is_flat())
        throw std::invalid_argument("DIGIT requires a flat entry profile");
      placements.assign(kDigitPlacements.begin(), kDigitPlacements.end());
      break;
    case Gadget::Close:
      if (!profile.is_flat())
        throw std::invalid_argument("CLOSE requires a flat entry profile");
      placements.assign(kClosePlacements.begin(), kClosePlacements.end());
      break;
  }
  BucketProfile current = profile;
  for (const Placement& step : placements) {
    auto outcomes = local_placements(current, step.kind);
    auto it = std::find_if(outcomes.begin(), outcomes.end(),
                           [&](const LocalOutcome& o) { return o.placement == step; });
    if (it == outcomes.end() || it->badness != Badness::Good)
      throw std::logic_error("canonical gadget step is not clean");
    current = it->profile;
  }
  return current;
}

// ---------------------------------------------------------------------------
// Lemma harness

struct LemmaStage {
  std::string label;
  int examined = 0;
  int good = 0;
  int hole = 0;
  int well = 0;
};

struct LemmaReport {
  int id = 0;
  int lookahead = 0;
  std::vector<LemmaStage> stages;
  std::vector<std::string> detail;  // one line per examined placement
  int survivors = 0;                // candidate lines alive at `lookahead`
  std::optional<int> minimal_lookahead;
  bool canonical_identified = false;
  bool claim_holds = false;
  std::string summary;

  std::string to_text() const {
    std::ostringstream os;
    os << "lemma " << id << " (lookahead " << lookahead << ")\n";
    for (const auto& s : stages)
      os << "  " << s.label << ": " << s.examined << " placements, " << s.good
         << " good, " << s.hole << " hole, " << s.well << " well\n";
    for (const auto& line : detail) os << "    " << line << "\n";
    if (minimal_lookahead)
      os << "  minimal sufficient lookahead: " << *minimal_lookahead << "\n";
    os << "  " << summary << "\n";
    os << (claim_holds ? "  claim holds" : "  claim DOES NOT hold") << "\n";
    return os.str();
  }
};

namespace detail {

inline std::string outcome_line(const LocalOutcome& o) {
  std::ostringstream os;
  os << kind_token(o.placement.kind) << " orient=" << o.placement.orient
     << " col=" << o.placement.col << " -> " << badness_name(o.badness);
  if (o.badness == Badness::Hole) {
    os << " holes=";
    for (std::size_t i = 0; i < o.holes.size(); ++i)
      os << (i ? "," : "") << "(" << o.holes[i].col << "," << o.holes[i].row << ")";
  } else {
    os << " heights=(" << o.profile.heights[0] << "," << o.profile.heights[1]
       << "," << o.profile.heights[2] << ")";
  }
  return os.str();
}

inline LemmaStage tally(const std::string& label,
                        const std::vector<LocalOutcome>& outcomes) {
  LemmaStage stage{label, static_cast<int>(outcomes.size()), 0, 0, 0};
  for (const auto& o : outcomes) {
    if (o.badness == Badness::Good) ++stage.good;
    if (o.badness == Badness::Hole) ++stage.hole;
    if (o.badness == Badness::Well) ++stage.well;
  }
  return stage;
}

/// True if some all-GOOD continuation through `probes[0..plies)` exists.
inline bool survives_probe(const BucketProfile& profile,
                           const std::vector<PieceKind>& probes, int plies) {
  if (plies <= 0 || probes.empty()) return true;
  for (const auto& o : local_placements(profile, probes.front()))
    if (o.badness == Badness::Good &&
        survives_probe(o.profile,
                       std::vector<PieceKind>(probes.begin() + 1, probes.end()),
                       plies - 1))
      return true;
  return false;
}

}  // namespace detail

/// Mechanically re-verifies one of the placement lemmas (ids 5..10) by
/// exhaustive enumeration on the lemma's entry profile.
///
/// Ids 5, 6, 7 and 10 classify a single piece dropped on a closed bucket.
/// Id 8 enumerates the full digit sequence (T, T, RG) on an open bucket and
/// accepts a line only if every prefix is GOOD. Id 9 enumerates the close
/// decision: each GOOD first gun is a candidate line, refuted when no
/// continuation through the probe pieces (the snake, then the reopening gun)
/// stays GOOD for `lookahead` plies.
inline LemmaReport check_lemma(int id, int lookahead = 1) {
  if (id < 5 || id > 10) throw std::invalid_argument("unknown lemma id");
  if (lookahead < 0) throw std::invalid_argument("lookahead must be >= 0");
  LemmaReport report;
  report.id = id;
  report.lookahead = lookahead;

  const auto flat = BucketProfile{{0, 0, 0}};

  if (id == 5 || id == 6 || id == 7 || id == 10) {
    const PieceKind kind = id == 5   ? PieceKind::RG
                           : id == 6 ? PieceKind::T
                           : id == 7 ? PieceKind::LS
                                     : PieceKind::LG;
    auto outcomes = local_placements(kClosedProfile, kind);
    for (const auto& o : outcomes) report.detail.push_back(detail::outcome_line(o));
    auto stage = detail::tally(std::string(kind_token(kind)) + " on closed bucket",
                               outcomes);
    report.stages.push_back(stage);
    std::ostringstream summary;
    switch (id) {
      case 5:
        report.claim_holds = stage.examined == 6 && stage.good == 0;
        summary << stage.examined << " placements, " << stage.good << " good";
        break;
      case 6:
        report.claim_holds =
            stage.examined == 6 && stage.good == 0 && stage.well == 1;
        summary << stage.examined << " placements, " << stage.good
                << " good, exactly " << stage.well << " leaves an I-only shaft";
        break;
      case 7:
        report.claim_holds =
            stage.examined == 3 && stage.good == 0 && stage.well == 1;
        summary << stage.examined << " placements, " << stage.good
                << " good, exactly " << stage.well << " leaves an I-only shaft";
        break;
      case 10: {
        int flat_good = 0;
        for (const auto& o : outcomes)
          if (o.badness == Badness::Good && o.profile.is_flat()) ++flat_good;
        report.canonical_identified = flat_good == 1;
        report.claim_holds =
            stage.examined == 6 && stage.good == 1 && flat_good == 1;
        summary << stage.examined << " placements, " << stage.good
                << " good (opens to flat)";
        break;
      }
    }
    report.survivors = stage.good;
    report.summary = summary.str();
    return report;
  }

  if (id == 8) {
    // Digit uniqueness: every prefix of T, T, RG must stay GOOD.
    auto first = local_placements(flat, PieceKind::T);
    report.stages.push_back(detail::tally("first T on open bucket", first));
    for (const auto& o : first) report.detail.push_back(detail::outcome_line(o));

    LemmaStage second_stage{"second T", 0, 0, 0, 0};
    LemmaStage third_stage{"closing RG", 0, 0, 0, 0};
    int accepted_lines = 0;
    bool canonical_line = false;
    bool flat_plus_four = false;
    for (const auto& t1 : first) {
      if (t1.badness != Badness::Good) continue;
      auto second = local_placements(t1.profile, PieceKind::T);
      auto s = detail::tally("", second);
      second_stage.examined += s.examined;
      second_stage.good += s.good;
      second_stage.hole += s.hole;
      second_stage.well += s.well;
      for (const auto& o : second)
        report.detail.push_back("after first T: " + detail::outcome_line(o));
      for (const auto& t2 : second) {
        if (t2.badness != Badness::Good) continue;
        auto third = local_placements(t2.profile, PieceKind::RG);
        auto s3 = detail::tally("", third);
        third_stage.examined += s3.examined;
        third_stage.good += s3.good;
        third_stage.hole += s3.hole;
        third_stage.well += s3.well;
        for (const auto& rg : third) {
          if (rg.badness != Badness::Good) continue;
          ++accepted_lines;
          flat_plus_four = rg.profile.is_flat() && rg.profile.heights[0] == 4;
          canonical_line = t1.placement == kDigitPlacements[0] &&
                           t2.placement == kDigitPlacements[1] &&
                           rg.placement == kDigitPlacements[2];
        }
      }
    }
    report.stages.push_back(second_stage);
    report.stages.push_back(third_stage);
    report.survivors = accepted_lines;
    report.canonical_identified = canonical_line;
    report.claim_holds = report.stages[0].good == 1 && second_stage.good == 2 &&
                         accepted_lines == 1 && flat_plus_four && canonical_line;
    std::ostringstream summary;
    summary << "first T: " << report.stages[0].good << "/"
            << report.stages[0].examined << " good; second T: " << second_stage.good
            << "/" << second_stage.examined << " good; accepted lines: "
            << accepted_lines << (flat_plus_four ? " (flat +4)" : "");
    report.summary = summary.str();
    return report;
  }

  // id == 9. Close uniqueness: candidates are the GOOD first guns; a
  // candidate survives lookahead k if some continuation through the probe
  // pieces stays GOOD for k plies.
  const std::vector<PieceKind> probes{PieceKind::LS, PieceKind::LG};
  auto first = local_placements(flat, PieceKind::RG);
  report.stages.push_back(detail::tally("RG on open bucket", first));
  for (const auto& o : first) report.detail.push_back(detail::outcome_line(o));

  const auto survivors_at = [&](int plies) {
    int n = 0;
    for (const auto& rg : first)
      if (rg.badness == Badness::Good &&
          detail::survives_probe(rg.profile, probes, plies))
        ++n;
    return n;
  };

  const int capped = std::min(lookahead, static_cast<int>(probes.size()));
  report.survivors = survivors_at(capped);
  for (int k = 0; k <= static_cast<int>(probes.size()); ++k) {
    if (survivors_at(k) == 1) {
      report.minimal_lookahead = k;
      break;
    }
  }

  // The canonical close: the surviving gun's unique GOOD snake must rebuild
  // the lock profile.
  bool closes_to_lock = false;
  bool canonical_line = false;
  LemmaStage snake_stage{"LS after each good RG", 0, 0, 0, 0};
  for (const auto& rg : first) {
    if (rg.badness != Badness::Good) continue;
    auto snakes = local_placements(rg.profile, PieceKind::LS);
    auto s = detail::tally("", snakes);
    snake_stage.examined += s.examined;
    snake_stage.good += s.good;
    snake_stage.hole += s.hole;
    snake_stage.well += s.well;
    for (const auto& ls : snakes) {
      report.detail.push_back("after RG orient=" + std::to_string(rg.placement.orient) +
                              " col=" + std::to_string(rg.placement.col) + ": " +
                              detail::outcome_line(ls));
      if (ls.badness != Badness::Good) continue;
      if (ls.profile.closed_base().has_value()) closes_to_lock = true;
      canonical_line = rg.placement == kClosePlacements[0] &&
                       ls.placement == kClosePlacements[1];
    }
  }
  report.stages.push_back(snake_stage);
  report.canonical_identified = canonical_line;
  report.claim_holds = report.stages[0].examined == 6 &&
                       report.stages[0].good == 3 && report.survivors == 1 &&
                       snake_stage.good == 1 && closes_to_lock && canonical_line;
  std::ostringstream summary;
  summary << "RG: " << report.stages[0].good << "/" << report.stages[0].examined
          << " good; " << report.survivors << " line(s) survive lookahead "
          << lookahead;
  if (report.survivors > 1) summary << " (insufficient to isolate the close)";
  else if (closes_to_lock) summary << "; survivor closes to (1,3,4)";
  report.summary = summary.str();
  return report;
}

}  // namespace harddrop
