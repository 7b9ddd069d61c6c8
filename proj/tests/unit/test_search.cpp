#include <doctest.h>

#include <cmath>

#include "rearr/optimize.hpp"
#include "rearr/search.hpp"

using namespace rearr;

namespace {

Matrix random_factor(std::size_t dim, std::size_t rank, Rng& rng) {
  Matrix g(dim, rank);
  for (double& x : g.data()) x = rng.normal();
  return g;
}

}  // namespace

TEST_CASE("nelder_mead_maximize finds the top of a concave quadratic") {
  const Objective f = [](std::span<const double> x) {
    return -(x[0] - 1) * (x[0] - 1) - 2 * (x[1] + 0.5) * (x[1] + 0.5) - 3;
  };
  const auto r = nelder_mead_maximize(f, {0, 0}, NelderMeadOptions{});
  CHECK(r.x[0] == doctest::Approx(1).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(-0.5).epsilon(1e-5));
  CHECK(r.value == doctest::Approx(-3).epsilon(1e-10));
  CHECK(r.evaluations > r.iterations);
}

TEST_CASE("nelder_mead_maximize handles a kink") {
  const Objective f = [](std::span<const double> x) { return -std::abs(x[0] - 2) - std::abs(x[1]); };
  const auto r = nelder_mead_maximize(f, {5, 3}, NelderMeadOptions{});
  CHECK(r.value >= -1e-6);
}

TEST_CASE("finite_diff_ascent climbs a smooth objective") {
  const Objective f = [](std::span<const double> x) { return -(x[0] - 3) * (x[0] - 3) - x[1] * x[1]; };
  const auto r = finite_diff_ascent(f, {0, 1}, GradientAscentOptions{});
  CHECK(r.x[0] == doctest::Approx(3).epsilon(1e-6));
  CHECK(std::abs(r.x[1]) <= 1e-6);
}

TEST_CASE("objective") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix g = random_factor(3, 3, rng);
    CHECK(std::abs(objective(parse_word("AABABB"), g, g)) <= 1e-10);
    const Matrix h = random_factor(3, 3, rng);
    const double v = objective(parse_word("AABABB"), g, h);
    CHECK(objective(parse_word("AABABB"), 3.7 * g, h) == doctest::Approx(v).epsilon(1e-12));
    const Matrix g2 = random_factor(2, 2, rng), h2 = random_factor(2, 1, rng);
    CHECK(objective(parse_word("ABBABAAB"), g2, h2) <= 1e-10);
  }
  CHECK(objective(parse_word("AB"), Matrix(2, 2), Matrix::identity(2)) == 0.0);
}

TEST_CASE("SearchConfig validation") {
  SearchConfig c;
  c.restarts = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.dim = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = SearchConfig{};
  c.rank = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK(parse_search_method("finite_diff_ascent") == SearchMethod::finite_diff_ascent);
  CHECK_THROWS(parse_search_method("simplex"));
}

TEST_CASE("search finds nothing for ordered words and 2x2 matrices") {
  SearchConfig c;
  c.word = parse_word("AAB");
  c.restarts = 4;
  c.max_iters = 400;
  CHECK(run_search(c).best_violation <= 1e-10);
  c.word = parse_word("AABABB");
  c.dim = 2;
  CHECK(run_search(c).best_violation <= 1e-10);
}

TEST_CASE("search finds the 3x3 AABABB violation") {
  SearchConfig c;
  c.restarts = 16;
  const auto r = run_search(c);
  CHECK(r.best_violation > 1e-6);
  CHECK(r.a.dim() == 3);
  CHECK(r.gap.gap == doctest::Approx(-r.best_violation));
}

TEST_CASE("search is independent of the execution mode and thread count") {
  SearchConfig c;
  c.restarts = 6;
  c.max_iters = 300;
  c.seed = 99;
  const auto s = run_search(c, Execution::serial);
  batch::set_threads(1);
  const auto p1 = run_search(c, Execution::parallel);
  batch::set_threads(4);
  const auto p4 = run_search(c, Execution::parallel);
  for (const auto* r : {&p1, &p4}) {
    CHECK(r->best_violation == s.best_violation);
    CHECK(r->restart_index == s.restart_index);
    CHECK(r->a == s.a);
    CHECK(r->b == s.b);
  }
  c.method = SearchMethod::finite_diff_ascent;
  CHECK(run_search(c, Execution::serial).a == run_search(c, Execution::parallel).a);
}

TEST_CASE("ties go to the lowest restart index") {
  SearchConfig c;
  c.word = parse_word("AAB");
  c.restarts = 5;
  c.max_iters = 50;
  const auto r = run_search(c, Execution::parallel);
  // Every restart of an ordered word ends at violation 0.
  CHECK(r.best_violation == 0.0);
  CHECK(r.restart_index == 0);
}

TEST_CASE("sweep_words") {
  SweepBudget budget;
  budget.restarts = 2;
  budget.max_iters = 200;
  const auto rows = sweep_words(4, 2, budget, 1);
  CHECK(rows.size() == 30);
  for (const auto& r : rows) CHECK(r.label == SweepLabel::no_violation_found);
  budget.max_searches = 3;
  const auto cut = sweep_words(3, 2, budget, 1);
  CHECK(cut[2].label == SweepLabel::no_violation_found);
  CHECK(cut[3].label == SweepLabel::skipped);
  CHECK_THROWS_AS(sweep_words(15, 3, budget, 1), std::invalid_argument);
}
