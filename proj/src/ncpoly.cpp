#include "rearr/ncpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace rearr {

std::string reverse_monomial(std::string_view m) { return std::string(m.rbegin(), m.rend()); }

NcPolynomial NcPolynomial::one(unsigned truncation_order) {
  return monomial("", 1, truncation_order);
}

NcPolynomial NcPolynomial::monomial(const Monomial& m, const mpz_class& coeff, unsigned truncation_order) {
  NcPolynomial p(truncation_order);
  p.add(m, coeff);
  return p;
}

mpz_class NcPolynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void NcPolynomial::add(const Monomial& m, const mpz_class& c) {
  if (m.size() > order_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

NcPolynomial NcPolynomial::degree_part(unsigned k) const {
  NcPolynomial out(order_);
  for (const auto& [m, c] : terms_)
    if (m.size() == k) out.terms_.emplace(m, c);
  return out;
}

NcPolynomial NcPolynomial::transpose() const {
  NcPolynomial out(order_);
  for (const auto& [m, c] : terms_) out.add(reverse_monomial(m), c);
  return out;
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

NcPolynomial& NcPolynomial::operator*=(const mpz_class& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

std::string NcPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.get_str();
    if (!m.empty()) {
      out += '*';
      out += m;
    }
  }
  return out;
}

NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) { return a += b; }
NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) { return a -= b; }

NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
  NcPolynomial out(std::min(a.truncation_order(), b.truncation_order()));
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma.size() + mb.size() > out.truncation_order()) continue;
      out.add(ma + mb, ca * cb);
    }
  }
  return out;
}

NcPolynomial expand_word(const Word& word, unsigned order) {
  NcPolynomial poly = NcPolynomial::one(order);
  // Multiply by (1 + letter) once per letter: every existing monomial either
  // skips the letter or appends it.
  for (char letter : word.letters()) {
    std::vector<std::pair<Monomial, mpz_class>> grown;
    for (const auto& [m, c] : poly.terms()) {
      if (m.size() < order) grown.emplace_back(m + letter, c);
    }
    for (const auto& [m, c] : grown) poly.add(m, c);
  }
  return poly;
}

ExpansionCoeffs extract_coeffs(const Word& word) {
  static const std::array<const char*, 12> kMonomials = {"AA",  "AB",  "BA",  "BB",  "AAA", "AAB",
                                                         "ABA", "BAA", "ABB", "BAB", "BBA", "BBB"};
  const auto poly = expand_word(word, 3);
  ExpansionCoeffs out;
  for (std::size_t i = 0; i < kMonomials.size(); ++i) out.a[i] = poly.coeff(kMonomials[i]);
  return out;
}

Matrix eval_monomial(std::string_view m, const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows() || !b.square()) {
    throw DimensionError("substitution needs square matrices of equal size");
  }
  Matrix out = Matrix::identity(a.rows());
  for (char c : m) out = out * (c == 'A' ? a : b);
  return out;
}

Matrix substitute(const NcPolynomial& poly, const Matrix& a, const Matrix& b) {
  if (!a.square() || a.rows() != b.rows() || !b.square()) {
    throw DimensionError("substitution needs square matrices of equal size");
  }
  Matrix out(a.rows(), a.cols());
  for (const auto& [m, c] : poly.terms()) out += c.get_d() * eval_monomial(m, a, b);
  return out;
}

std::vector<std::vector<BilinearTerm>> squared_norm_expansion(const Word& word, unsigned order) {
  if (order > kMaxSquaredNormOrder) {
    throw std::invalid_argument("squared-norm expansion is only provided up to third order");
  }
  const auto full = expand_word(word, order);
  std::vector<NcPolynomial> x;
  for (unsigned k = 0; k <= order; ++k) x.push_back(full.degree_part(k));

  std::vector<std::vector<BilinearTerm>> out(order + 1);
  const auto id = NcPolynomial::one(order);
  out[0].push_back({1, id, id});
  if (order >= 1) out[1].push_back({2, x[1], id});
  if (order >= 2) {
    out[2].push_back({2, x[2], id});
    out[2].push_back({1, x[1], x[1]});
  }
  if (order >= 3) {
    out[3].push_back({2, x[3], id});
    out[3].push_back({2, x[2], x[1]});
  }
  return out;
}

namespace {

void accumulate(QuadraticForm& q, const Monomial& m, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = q.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) q.erase(it);
  }
}

}  // namespace

QuadraticForm to_quadratic_form(const std::vector<BilinearTerm>& terms) {
  QuadraticForm q;
  for (const auto& t : terms) {
    for (const auto& [p, cp] : t.left.terms()) {
      for (const auto& [r, cr] : t.right.terms()) {
        // <p u, r u> = <r^T p u, u>
        accumulate(q, reverse_monomial(r) + p, t.coeff * cp * cr);
      }
    }
  }
  return q;
}

QuadraticForm canonicalize(const QuadraticForm& q) {
  QuadraticForm out;
  for (const auto& [m, c] : q) {
    const auto r = reverse_monomial(m);
    accumulate(out, std::min(m, r), c);
  }
  return out;
}

QuadraticForm expansion_difference(const Word& word, unsigned k) {
  const auto z = to_quadratic_form(squared_norm_expansion(ordered(word), k)[k]);
  const auto x = to_quadratic_form(squared_norm_expansion(word, k)[k]);
  QuadraticForm diff = z;
  for (const auto& [m, c] : x) accumulate(diff, m, -c);
  return diff;
}

double evaluate(const QuadraticForm& q, const Matrix& a, const Matrix& b, const std::vector<double>& u) {
  double s = 0.0;
  for (const auto& [m, c] : q) s += c.get_d() * dot(eval_monomial(m, a, b) * u, u);
  return s;
}

std::string to_string(const QuadraticForm& q) {
  if (q.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : q) {
    if (!out.empty()) out += " + ";
    out += c.get_str() + "*<" + (m.empty() ? std::string("1") : m) + "u,u>";
  }
  return out;
}

}  // namespace rearr
