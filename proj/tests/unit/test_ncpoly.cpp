#include <doctest.h>

#include <map>

#include "rearr/linalg.hpp"
#include "rearr/ncpoly.hpp"

using namespace rearr;

namespace {

// Coefficient of every monomial of degree <= d, by enumerating all position
// subsets of the letter string.
std::map<std::string, long> subset_counts(const std::string& letters, unsigned d) {
  std::map<std::string, long> out;
  const std::size_t n = letters.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<unsigned>(__builtin_popcountll(mask)) > d) continue;
    std::string m;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) m += letters[i];
    ++out[m];
  }
  return out;
}

void check_against_oracle(const Word& w, unsigned d) {
  const auto p = expand_word(w, d);
  const auto oracle = subset_counts(w.letters(), d);
  REQUIRE(p.terms().size() == oracle.size());
  for (const auto& [m, c] : oracle) REQUIRE(p.coeff(m) == c);
}

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

QuadraticForm form(std::initializer_list<std::pair<const char*, long>> terms) {
  QuadraticForm q;
  for (const auto& [m, c] : terms) q[m] += c;
  for (auto it = q.begin(); it != q.end();) it = it->second == 0 ? q.erase(it) : std::next(it);
  return q;
}

Matrix eval_product_shifted(const Word& w, const Matrix& a, const Matrix& b, double eps) {
  Matrix ae = eps * a, be = eps * b;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    ae(i, i) += 1;
    be(i, i) += 1;
  }
  Matrix out = Matrix::identity(a.rows());
  for (char c : w.letters()) out = out * (c == 'A' ? ae : be);
  return out;
}

}  // namespace

TEST_CASE("expand_word examples") {
  const auto p = expand_word(parse_word("ABAB"), 2);
  CHECK(p.degree_part(1).to_string() == "2*A + 2*B");
  CHECK(p.degree_part(2).to_string() == "1*AA + 3*AB + 1*BA + 1*BB");
  CHECK(p.to_string() == "1 + 2*A + 2*B + 1*AA + 3*AB + 1*BA + 1*BB");

  const auto q = expand_word(parse_word("AABB"), 2);
  CHECK(q.degree_part(2).to_string() == "1*AA + 4*AB + 1*BB");
  CHECK(q.coeff("BA") == 0);

  CHECK(expand_word(parse_word("BBB"), 2).degree_part(2).to_string() == "3*BB");
  CHECK(NcPolynomial(2).to_string() == "0");
  CHECK(expand_word(parse_word("AB"), 0).to_string() == "1");
}

TEST_CASE("expand_word matches subset enumeration on every word up to length 10") {
  for (const auto& w : enumerate_words(10))
    for (unsigned d = 0; d <= 3; ++d) check_against_oracle(w, d);
  check_against_oracle(parse_word("AABBABBAABBAAB"), 6);
}

TEST_CASE("degree-1 part is mA + nB and degree-k sums are binomial") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::string s(rng.uniform_int(1, 30), 'A');
    for (auto& c : s) c = rng.uniform_int(0, 1) ? 'B' : 'A';
    const Word w = Word::from_letters(s);
    const auto p = expand_word(w, 4);
    CHECK(p.coeff("A") == w.total_a());
    CHECK(p.coeff("B") == w.total_b());
    for (unsigned k = 0; k <= 4; ++k) {
      mpz_class sum = 0;
      const auto part = p.degree_part(k);
      for (const auto& [m, c] : part.terms()) sum += c;
      CHECK(sum == binom(static_cast<long>(w.length()), k));
    }
  }
}

TEST_CASE("big coefficients do not wrap") {
  const Word w = Word::from_letters(std::string(100, 'A'));
  const auto p = expand_word(w, 50);
  mpz_class expected;
  mpz_bin_uiui(expected.get_mpz_t(), 100, 50);
  CHECK(p.coeff(std::string(50, 'A')) == expected);
  CHECK(expected > mpz_class("9223372036854775807"));
}

TEST_CASE("extract_coeffs") {
  const auto c = extract_coeffs(parse_word("ABAB"));
  CHECK(c(3) == 1);
  CHECK(c(2) == 3);
  const auto b = extract_coeffs(parse_word("BBB"));
  CHECK(b(1) == 0);
  CHECK(b(2) == 0);
  CHECK(b(3) == 0);
  CHECK(b(4) == 3);
  CHECK(b(12) == 1);
  for (const char* o : {"AAABB", "AB", "ABBBB", "AAAAB"}) {
    const auto oc = extract_coeffs(parse_word(o));
    for (int i : {3, 7, 8, 10, 11}) CHECK(oc(i) == 0);
  }
}

TEST_CASE("ordered-word coefficients collect the disordered ones") {
  for (const auto& w : enumerate_words(10)) {
    const auto x = extract_coeffs(w);
    const auto z = extract_coeffs(ordered(w));
    REQUIRE(z(1) == x(1));
    REQUIRE(z(2) == x(2) + x(3));
    REQUIRE(z(4) == x(4));
    REQUIRE(z(6) == x(6) + x(7) + x(8));
    REQUIRE(z(9) == x(9) + x(10) + x(11));
  }
}

TEST_CASE("expansion of a concatenation is the truncated product") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    std::string s(rng.uniform_int(1, 8), 'A'), t(rng.uniform_int(1, 8), 'A');
    for (auto& c : s) c = rng.uniform_int(0, 1) ? 'B' : 'A';
    for (auto& c : t) c = rng.uniform_int(0, 1) ? 'B' : 'A';
    const unsigned d = static_cast<unsigned>(rng.uniform_int(0, 5));
    CHECK(expand_word(Word::from_letters(s + t), d) ==
          expand_word(Word::from_letters(s), d) * expand_word(Word::from_letters(t), d));
  }
}

TEST_CASE("polynomial arithmetic") {
  auto p = NcPolynomial::monomial("AB", 2, 3);
  p.add("AB", -2);
  CHECK(p.is_zero());
  p.add("ABAB", 5);
  CHECK(p.is_zero());
  const auto q = NcPolynomial::monomial("AAB", 1, 3);
  CHECK(q.transpose().coeff("BAA") == 1);
  CHECK((q - q).is_zero());
}

TEST_CASE("substitute") {
  const auto id = Matrix::identity(2);
  NcPolynomial p(1);
  p.add("A", 1);
  p.add("B", 1);
  CHECK(substitute(p, id, id) == 2.0 * id);
  NcPolynomial c(2);
  c.add("AB", 1);
  c.add("BA", -1);
  CHECK(substitute(c, Matrix{{1, 0}, {0, 2}}, Matrix{{3, 0}, {0, 5}}) == Matrix(2, 2));
  CHECK_THROWS_AS(substitute(p, Matrix::identity(2), Matrix::identity(3)), DimensionError);
}

TEST_CASE("third-order truncation error is O(eps^4)") {
  Rng rng(23);
  for (const char* ws : {"ABAB", "AABABB", "AABBABBAABBAA"}) {
    const Word w = parse_word(ws);
    const SymMatrix a = sample_psd(3, rng, true, 3);
    const SymMatrix b = sample_psd(3, rng, true, 3);
    const auto p = expand_word(w, 3);
    std::vector<double> err;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      // Substitute eps A, eps B: the degree grading carries the eps powers.
      const Matrix s = substitute(p, eps * a.matrix(), eps * b.matrix());
      err.push_back((s - eval_product_shifted(w, a, b, eps)).frobenius_norm());
    }
    const double c = err[0] / 1e-8;
    CHECK(c > 0);
    const double roundoff = 1e-13 * std::pow(2.0, double(w.length()));
    CHECK(err[1] <= 2 * c * 1e-12 + roundoff);
    CHECK(err[2] <= 2 * c * 1e-16 + roundoff);
  }
}

TEST_CASE("squared_norm_expansion structure") {
  CHECK_THROWS_AS(squared_norm_expansion(parse_word("AB"), 4), std::invalid_argument);
  const auto terms = squared_norm_expansion(parse_word("ABAB"), 3);
  REQUIRE(terms.size() == 4);
  CHECK(to_quadratic_form(terms[0]) == form({{"", 1}}));
  CHECK(terms[1].size() == 1);
  CHECK(terms[2].size() == 2);
  CHECK(terms[3].size() == 2);
  CHECK(to_quadratic_form(terms[1]) == form({{"A", 4}, {"B", 4}}));

  CHECK(expansion_difference(parse_word("ABAB"), 0).empty());
  CHECK(expansion_difference(parse_word("ABAB"), 1).empty());
  // 2<Z2 u,u> - 2<X2 u,u> with a3 = 1; the X1 terms agree.
  CHECK(expansion_difference(parse_word("ABAB"), 2) == form({{"AB", 2}, {"BA", -2}}));
  CHECK(canonicalize(expansion_difference(parse_word("ABAB"), 2)).empty());

  const auto z2 = expand_word(parse_word("AABB"), 2).degree_part(2);
  const auto x2 = expand_word(parse_word("ABAB"), 2).degree_part(2);
  CHECK((z2 - x2).to_string() == "1*AB + -1*BA");
}

TEST_CASE("orders 0-2 cancel for every word up to length 12") {
  for (const auto& w : enumerate_words(12))
    for (unsigned k = 0; k <= 2; ++k) REQUIRE(canonicalize(expansion_difference(w, k)).empty());
}

TEST_CASE("order-3 difference has the three-type form") {
  for (const auto& w : enumerate_words(10)) {
    const auto c = extract_coeffs(w);
    const long a3 = c(3).get_si(), a7 = c(7).get_si(), a10 = c(10).get_si();
    const long m = w.total_a(), n = w.total_b();
    // 2 a7 (<AAB> - <ABA>) + 2 a10 (<ABB> - <BAB>) + 2 a3 <(AB - BA)u, (mA + nB)u>
    const QuadraticForm expected = canonicalize(form({{"AAB", 2 * a7},
                                                      {"ABA", -2 * a7},
                                                      {"ABB", 2 * a10},
                                                      {"BAB", -2 * a10},
                                                      {"AAB", 2 * a3 * m},
                                                      {"ABA", -2 * a3 * m},
                                                      {"BAB", 2 * a3 * n},
                                                      {"BBA", -2 * a3 * n}}));
    REQUIRE(canonicalize(expansion_difference(w, 3)) == expected);
  }
}

TEST_CASE("numeric cancellation of the symbolic difference") {
  Rng rng(24);
  for (const auto& w : enumerate_words(8)) {
    const std::size_t dim = 2 + rng.uniform_int(0, 2);
    const SymMatrix a = sample_psd(dim, rng, true, dim);
    const SymMatrix b = sample_psd(dim, rng, true, dim);
    std::vector<double> u(dim);
    for (auto& x : u) x = rng.normal();
    for (unsigned k = 0; k <= 2; ++k) REQUIRE(std::abs(evaluate(expansion_difference(w, k), a, b, u)) <= 1e-9);
  }
}
