#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rearr/batch.hpp"
#include "rearr/certify.hpp"
#include "rearr/linalg.hpp"
#include "rearr/verify.hpp"
#include "rearr/word.hpp"

namespace rearr {

enum class SearchMethod { nelder_mead, finite_diff_ascent };

std::string to_string(SearchMethod m);
SearchMethod parse_search_method(const std::string& s);

inline constexpr std::uint64_t kDefaultSeed = 1;

struct SearchConfig {
  Word word = Word::from_letters("AABABB");
  std::size_t dim = 3;
  std::size_t restarts = 64;
  std::size_t max_iters = 3000;
  std::size_t rank = 0;  // 0 means rank = dim
  std::uint64_t seed = kDefaultSeed;
  SearchMethod method = SearchMethod::nelder_mead;
  double initial_step = 0.25;  // simplex edge (Nelder-Mead) or first rate (ascent)
  double shrink = 0.5;
  double fd_step = 1e-6;

  std::size_t effective_rank() const { return rank == 0 ? dim : rank; }
  /// Throws std::invalid_argument on restarts < 1, dim < 2 or rank > dim.
  void validate() const;
};

struct SearchResult {
  double best_violation = 0;  // -gap; positive means the inequality fails
  GapReport gap;
  SymMatrix a, b;
  std::size_t restart_index = 0;
  std::size_t iterations_used = 0;
  bool certified = false;
  std::optional<CertifyOutcome> certification;
};

/// ||W(A,B)|| - ||A^m B^n|| for A = G G^T, B = H H^T, each scaled to unit
/// spectral norm. A zero factor gives 0.
double objective(const Word& word, const Matrix& g, const Matrix& h);

/// Best of `restarts` independent maximizations of `objective`. Restart i uses
/// the RNG substream (seed, i); the winner is the largest violation, lowest
/// restart index on ties, so the result does not depend on the thread count.
SearchResult run_search(const SearchConfig& config, Execution exec = Execution::parallel);

/// A single restart; exposed for tests and benchmarks.
SearchResult run_restart(const SearchConfig& config, std::size_t restart_index);

enum class SweepLabel { violated_certified, violated_float, no_violation_found, skipped };
std::string to_string(SweepLabel l);

struct SweepBudget {
  std::size_t restarts = 8;
  std::size_t max_iters = 1500;
  std::size_t max_searches = 100000;  // words beyond this are marked skipped
  bool certify = true;
};

struct SweepRow {
  Word word;
  SweepLabel label = SweepLabel::skipped;
  double best_violation = 0;
};

inline constexpr std::size_t kMaxSweepLength = 14;

/// Runs a search for every canonical word up to max_length (<= 14). Word i
/// uses master seed substream_seed(seed, i).
std::vector<SweepRow> sweep_words(std::size_t max_length, std::size_t dim, const SweepBudget& budget,
                                  std::uint64_t seed, Execution exec = Execution::parallel);

}  // namespace rearr
