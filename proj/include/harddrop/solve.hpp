#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "harddrop/certify.hpp"
#include "harddrop/reduction.hpp"

namespace harddrop {

// ---------------------------------------------------------------------------
// Exact 3-partition oracle

/// Backtracking over bucket assignments with bucket-sum pruning: three
/// numbers per bucket, each bucket summing to B. Returns the
/// lexicographically first witness, or nullopt when no partition exists.
/// Requires a lax-valid instance.
inline std::optional<Partition> solve_3partition(const Instance3P& inst) {
  detail::require_lax_valid(inst);
  std::vector<long long> sums(static_cast<std::size_t>(inst.s), 0);
  std::vector<int> counts(static_cast<std::size_t>(inst.s), 0);
  std::vector<int> assign(inst.a.size(), -1);

  const auto rec = [&](const auto& self, std::size_t i) -> bool {
    if (i == inst.a.size()) {
      for (long long sum : sums)
        if (sum != inst.B) return false;
      return true;
    }
    // buckets are interchangeable, so the lexicographically first witness
    // never skips an untouched bucket
    int first_untouched = inst.s;
    for (int b = 0; b < inst.s; ++b)
      if (counts[static_cast<std::size_t>(b)] == 0) {
        first_untouched = b;
        break;
      }
    for (int b = 0; b <= first_untouched && b < inst.s; ++b) {
      const auto bi = static_cast<std::size_t>(b);
      if (counts[bi] == 3 || sums[bi] + inst.a[i] > inst.B) continue;
      sums[bi] += inst.a[i];
      ++counts[bi];
      assign[i] = b;
      if (self(self, i + 1)) return true;
      sums[bi] -= inst.a[i];
      --counts[bi];
      assign[i] = -1;
    }
    return false;
  };

  if (!rec(rec, 0)) return std::nullopt;
  return Partition{assign};
}

// ---------------------------------------------------------------------------
// Bad-state predicate

/// What the board must never look like during exact-budget play.
struct StateRules {
  std::optional<int> fill_column;    // the one shaft a deep well may occupy
  std::optional<int> max_stack_row;  // nothing may rest at or above this row
};

inline StateRules rules_for(const BoardLayout& layout) {
  return {layout.fill_column(), layout.bucket_height()};
}

/// True when the position is lost under exact-budget play: a covered hole
/// exists, a width-1 shaft of depth >= 3 sits outside the fill column, or a
/// cell rests at the bucket height before the fill phase. Only meaningful for
/// boards with the reduction's structure.
inline bool bad_state(const Board& board, const StateRules& rules,
                      bool fill_phase = false) {
  if (!covered_holes(board).empty()) return true;
  for (const Well& w : narrow_wells(board, kIOnlyWellDepth))
    if (!rules.fill_column || w.col != *rules.fill_column) return true;
  if (!fill_phase && rules.max_stack_row) {
    for (int col = 0; col < board.width(); ++col)
      if (board.column_height(col) > *rules.max_stack_row) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Clearability search

enum class SearchGoal {
  ClearBoard,  // consume every piece and end with an empty board
  NoBadState,  // consume every piece without ever entering a bad state
};

struct SearchConfig {
  long long node_budget = 1'000'000;
  bool prune_bad_states = false;  // requires rules; unsound off reduction boards
  bool transposition = true;
  bool budget_prune = true;  // cell-count bound, sound for the clear-board goal
  int parallel_width = 1;    // hint only; exploration is sequential
  SearchGoal goal = SearchGoal::ClearBoard;
  std::optional<StateRules> rules;
};

struct SearchVerdict {
  enum class Kind { Clearable, Unclearable, BudgetExceeded } kind =
      Kind::Unclearable;
  std::vector<Placement> witness;  // set for Clearable
  long long nodes_expanded = 0;
  std::size_t frontier_size = 0;  // depth of the stack when the budget ran out
};

namespace detail {

struct SearchState {
  std::vector<std::uint64_t> rows;
  std::size_t index;
  friend bool operator==(const SearchState&, const SearchState&) = default;
};

struct SearchStateHash {
  std::size_t operator()(const SearchState& s) const {
    std::size_t h = 1469598103934665603ull;
    const auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    for (std::uint64_t row : s.rows) mix(row);
    mix(s.index);
    return h;
  }
};

class Searcher {
 public:
  Searcher(const std::vector<PieceKind>& sequence, const SearchConfig& config)
      : sequence_(sequence), config_(config) {
    // a state is in the fill phase when only bars remain
    all_bars_from_.assign(sequence.size() + 1, true);
    for (std::size_t i = sequence.size(); i-- > 0;)
      all_bars_from_[i] =
          all_bars_from_[i + 1] && sequence[i] == PieceKind::I;
  }

  SearchVerdict run(const Board& board) {
    SearchVerdict verdict;
    path_.clear();
    nodes_ = 0;
    budget_hit_ = false;
    const bool found = dfs(board, 0);
    verdict.nodes_expanded = nodes_;
    if (found) {
      verdict.kind = SearchVerdict::Kind::Clearable;
      verdict.witness = path_;
    } else if (budget_hit_) {
      verdict.kind = SearchVerdict::Kind::BudgetExceeded;
      verdict.frontier_size = frontier_at_abort_;
    } else {
      verdict.kind = SearchVerdict::Kind::Unclearable;
    }
    return verdict;
  }

 private:
  bool dead_by_cell_budget(const Board& board, std::size_t index) const {
    const long long remaining_cells =
        4LL * static_cast<long long>(sequence_.size() - index);
    const long long filled = board.filled_count();
    // to end empty, every occupied row must complete, and the total must
    // split into whole rows
    if ((filled + remaining_cells) % board.width() != 0) return true;
    const long long needed =
        static_cast<long long>(board.occupied_rows()) * board.width() - filled;
    return remaining_cells < needed;
  }

  bool dfs(const Board& board, std::size_t index) {
    if (budget_hit_) return false;
    if (++nodes_ > config_.node_budget) {
      budget_hit_ = true;
      frontier_at_abort_ = path_.size();
      return false;
    }

    const bool fill_phase = all_bars_from_[index];
    if (config_.goal == SearchGoal::NoBadState || config_.prune_bad_states) {
      if (config_.rules && bad_state(board, *config_.rules, fill_phase))
        return false;
    }
    if (index == sequence_.size())
      return config_.goal == SearchGoal::NoBadState || board.empty();
    if (config_.goal == SearchGoal::ClearBoard && config_.budget_prune &&
        dead_by_cell_budget(board, index))
      return false;

    if (config_.transposition &&
        !visited_.insert({board.rows(), index}).second)
      return false;

    for (const auto& option : enumerate_placements(board, sequence_[index])) {
      if (option.tops_out) continue;
      auto applied = apply_placement(board, option.placement);
      if (!applied) continue;
      path_.push_back(option.placement);
      if (dfs(applied->board, index + 1)) return true;
      path_.pop_back();
      if (budget_hit_) return false;
    }
    return false;
  }

  const std::vector<PieceKind>& sequence_;
  const SearchConfig& config_;
  std::vector<bool> all_bars_from_;
  std::unordered_set<SearchState, SearchStateHash> visited_;
  std::vector<Placement> path_;
  long long nodes_ = 0;
  bool budget_hit_ = false;
  std::size_t frontier_at_abort_ = 0;
};

}  // namespace detail

/// Depth-first decision procedure over all placements of the sequence.
/// Complete (within the node budget) when bad-state pruning is off; with it
/// on, states failing bad_state are discarded, which is only sound for
/// boards produced by the reduction. The witness of a Clearable verdict is
/// the lexicographically first in enumeration order.
inline SearchVerdict search_clearable(const Board& board,
                                      const std::vector<PieceKind>& sequence,
                                      const SearchConfig& config = {}) {
  if (config.node_budget < 1)
    throw std::invalid_argument("node_budget must be >= 1");
  if ((config.prune_bad_states || config.goal == SearchGoal::NoBadState) &&
      !config.rules)
    throw std::invalid_argument("bad-state checks need StateRules");
  detail::Searcher searcher(sequence, config);
  return searcher.run(board);
}

}  // namespace harddrop
