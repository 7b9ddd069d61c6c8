#include "rearr/search.hpp"

#include <cmath>
#include <stdexcept>

#include "rearr/optimize.hpp"

namespace rearr {

std::string to_string(SearchMethod m) {
  return m == SearchMethod::nelder_mead ? "nelder_mead" : "finite_diff_ascent";
}

SearchMethod parse_search_method(const std::string& s) {
  if (s == "nelder_mead") return SearchMethod::nelder_mead;
  if (s == "finite_diff_ascent") return SearchMethod::finite_diff_ascent;
  throw std::invalid_argument("unknown search method '" + s + "'");
}

std::string to_string(SweepLabel l) {
  switch (l) {
    case SweepLabel::violated_certified:
      return "violated_certified";
    case SweepLabel::violated_float:
      return "violated_float";
    case SweepLabel::no_violation_found:
      return "no_violation_found";
    case SweepLabel::skipped:
      return "skipped";
  }
  return "unknown";
}

void SearchConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("search needs at least one restart");
  if (dim < 2) throw std::invalid_argument("search needs dim >= 2");
  if (rank > dim) throw std::invalid_argument("factor rank must not exceed dim");
  if (max_iters < 1) throw std::invalid_argument("search needs max_iters >= 1");
}

namespace {

struct Factors {
  Matrix g, h;
};

Factors unpack(std::span<const double> x, std::size_t dim, std::size_t rank) {
  const std::size_t half = dim * rank;
  return {Matrix(dim, rank, std::vector<double>(x.begin(), x.begin() + half)),
          Matrix(dim, rank, std::vector<double>(x.begin() + half, x.end()))};
}

SymMatrix normalized_gram(const Matrix& factor) {
  return normalize_spectral(SymMatrix(gram(factor.transpose()), true));
}

}  // namespace

double objective(const Word& word, const Matrix& g, const Matrix& h) {
  const SymMatrix a = normalized_gram(g);
  const SymMatrix b = normalized_gram(h);
  if (spectral_norm(a.matrix()).value == 0.0 || spectral_norm(b.matrix()).value == 0.0) return 0.0;
  const double nw = spectral_norm(eval_word(word, a, b)).value;
  const double no = spectral_norm(eval_word(ordered(word), a, b)).value;
  return nw - no;
}

SearchResult run_restart(const SearchConfig& config, std::size_t restart_index) {
  const std::size_t dim = config.dim;
  const std::size_t rank = config.effective_rank();
  Rng rng = Rng::substream(config.seed, restart_index);
  std::vector<double> x0(2 * dim * rank);
  for (auto& v : x0) v = rng.normal();

  const Objective f = [&](std::span<const double> x) {
    const auto [g, h] = unpack(x, dim, rank);
    return objective(config.word, g, h);
  };

  OptimizeResult opt;
  if (config.method == SearchMethod::nelder_mead) {
    NelderMeadOptions o;
    o.initial_step = config.initial_step;
    o.shrink = config.shrink;
    o.max_iters = config.max_iters;
    opt = nelder_mead_maximize(f, x0, o);
  } else {
    GradientAscentOptions o;
    o.fd_step = config.fd_step;
    o.initial_rate = config.initial_step;
    o.max_iters = config.max_iters;
    opt = finite_diff_ascent(f, x0, o);
  }

  const auto [g, h] = unpack(opt.x, dim, rank);
  SymMatrix a = normalized_gram(g);
  SymMatrix b = normalized_gram(h);
  GapReport gap = rearrangement_gap(config.word, a, b);
  const double violation = 0.0 - gap.gap;
  return SearchResult{.best_violation = violation,
                      .gap = std::move(gap),
                      .a = std::move(a),
                      .b = std::move(b),
                      .restart_index = restart_index,
                      .iterations_used = opt.iterations,
                      .certified = false,
                      .certification = std::nullopt};
}

SearchResult run_search(const SearchConfig& config, Execution exec) {
  config.validate();
  auto results = batch::map(exec, config.restarts, [&](std::size_t i) { return run_restart(config, i); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].best_violation > results[best].best_violation) best = i;
  }
  return std::move(results[best]);
}

std::vector<SweepRow> sweep_words(std::size_t max_length, std::size_t dim, const SweepBudget& budget,
                                  std::uint64_t seed, Execution exec) {
  if (max_length > kMaxSweepLength) {
    throw std::invalid_argument("sweep supports words up to length " + std::to_string(kMaxSweepLength));
  }
  const auto words = enumerate_words(max_length);
  return batch::map(exec, words.size(), [&](std::size_t i) {
    SweepRow row{words[i], SweepLabel::skipped, 0.0};
    if (i >= budget.max_searches) return row;
    SearchConfig cfg;
    cfg.word = words[i];
    cfg.dim = dim;
    cfg.restarts = budget.restarts;
    cfg.max_iters = budget.max_iters;
    cfg.seed = substream_seed(seed, i);
    auto res = run_search(cfg, Execution::serial);
    row.best_violation = res.best_violation;
    if (!is_violation(res.gap)) {
      row.label = SweepLabel::no_violation_found;
    } else if (budget.certify && certify_escalating(cfg.word, res.a, res.b).certified()) {
      row.label = SweepLabel::violated_certified;
    } else {
      row.label = SweepLabel::violated_float;
    }
    return row;
  });
}

}  // namespace rearr
