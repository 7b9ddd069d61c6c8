#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rearr/matrix.hpp"
#include "rearr/word.hpp"

namespace rearr {

/// Orders monomials by degree, then lexicographically ("" < "A" < "B" < "AA" ...).
struct MonomialOrder {
  bool operator()(const std::string& x, const std::string& y) const {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  }
};

/// A monomial in the noncommuting symbols A, B is its letter string; the
/// empty string is the identity.
using Monomial = std::string;
using TermMap = std::map<Monomial, mpz_class, MonomialOrder>;

std::string reverse_monomial(std::string_view m);

/// Integer-coefficient polynomial in two noncommuting symbols, truncated at a
/// fixed total degree. Zero coefficients are never stored.
class NcPolynomial {
 public:
  explicit NcPolynomial(unsigned truncation_order) : order_(truncation_order) {}

  static NcPolynomial one(unsigned truncation_order);
  static NcPolynomial monomial(const Monomial& m, const mpz_class& coeff, unsigned truncation_order);

  unsigned truncation_order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  mpz_class coeff(const Monomial& m) const;
  /// Adds c * m; silently drops monomials above the truncation order.
  void add(const Monomial& m, const mpz_class& c);

  /// Homogeneous part of degree k.
  NcPolynomial degree_part(unsigned k) const;
  /// Formal transpose: every monomial reversed (valid for symmetric symbols).
  NcPolynomial transpose() const;

  NcPolynomial& operator+=(const NcPolynomial& o);
  NcPolynomial& operator-=(const NcPolynomial& o);
  NcPolynomial& operator*=(const mpz_class& s);

  /// "1*AA + 3*AB + 1*BA + 1*BB"; the identity term prints as its coefficient
  /// and the zero polynomial as "0".
  std::string to_string() const;

  bool operator==(const NcPolynomial& o) const { return order_ == o.order_ && terms_ == o.terms_; }

 private:
  unsigned order_;
  TermMap terms_;
};

NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b);
NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b);
/// Truncated product; the result carries the smaller truncation order.
NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b);

/// Degree-<=order truncation of prod_i (1 + A)^{m_i} (1 + B)^{n_i}, degree
/// standing in for the power of epsilon. The coefficient of a monomial is the
/// number of ways to pick its letters, in order, out of the word's letters.
NcPolynomial expand_word(const Word& word, unsigned order);

/// a_1..a_12 of the second- and third-order parts:
///   X_2 = a1 AA + a2 AB + a3 BA + a4 BB,
///   X_3 = a5 AAA + a6 AAB + a7 ABA + a8 BAA + a9 ABB + a10 BAB + a11 BBA + a12 BBB.
struct ExpansionCoeffs {
  std::array<mpz_class, 12> a;
  /// 1-based accessor, a(3) is the BA coefficient.
  const mpz_class& operator()(int i) const { return a.at(static_cast<std::size_t>(i - 1)); }
};

ExpansionCoeffs extract_coeffs(const Word& word);

/// Evaluates the polynomial with A, B replaced by matrices.
Matrix substitute(const NcPolynomial& poly, const Matrix& a, const Matrix& b);
Matrix eval_monomial(std::string_view m, const Matrix& a, const Matrix& b);

/// coeff * <left u, right u>.
struct BilinearTerm {
  mpz_class coeff;
  NcPolynomial left;
  NcPolynomial right;
};

/// Quadratic form sum_mu c_mu <mu u, u>, keyed by monomial.
using QuadraticForm = TermMap;

inline constexpr unsigned kMaxSquaredNormOrder = 3;

/// The epsilon-orders of ||X_eps u||^2 for X_eps = W(1 + eps A, 1 + eps B):
///   order 0: <u,u>
///   order 1: 2<X1 u, u>
///   order 2: 2<X2 u, u> + <X1 u, X1 u>
///   order 3: 2<X3 u, u> + 2<X2 u, X1 u>
/// Throws std::invalid_argument for order > 3.
std::vector<std::vector<BilinearTerm>> squared_norm_expansion(const Word& word, unsigned order);

/// Rewrites each <P u, Q u> as <Q^T P u, u> and collects monomials.
QuadraticForm to_quadratic_form(const std::vector<BilinearTerm>& terms);

/// Identifies mu with its reversal (<M u, u> = <M^T u, u>); key is the
/// lexicographically smaller of the two. A form vanishes for all symmetric
/// A, B and all u iff its canonical form is empty.
QuadraticForm canonicalize(const QuadraticForm& q);

/// Order-k part of ||Z_eps u||^2 - ||X_eps u||^2 with Z the ordered word,
/// before canonicalization.
QuadraticForm expansion_difference(const Word& word, unsigned k);

double evaluate(const QuadraticForm& q, const Matrix& a, const Matrix& b, const std::vector<double>& u);

std::string to_string(const QuadraticForm& q);

}  // namespace rearr
