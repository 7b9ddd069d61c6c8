#include "rearr/certify.hpp"

#include <algorithm>
#include <cmath>

#include "rearr/linalg.hpp"

namespace rearr {

RationalMatrix RationalMatrix::from_doubles(const Matrix& m) {
  if (!m.square()) throw DimensionError("rational conversion needs a square matrix");
  RationalMatrix r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = mpq_class(m(i, j));  // exact for finite doubles
  return r;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

mpq_class RationalMatrix::trace() const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("rational product of different sizes");
  const std::size_t n = a.dim();
  RationalMatrix c(n);
  mpq_class s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

PsdCheck exact_psd_check(const RationalMatrix& input) {
  RationalMatrix m = input;
  const std::size_t n = m.dim();
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;

  PsdCheck out;
  while (!remaining.empty()) {
    auto piv_it = std::max_element(remaining.begin(), remaining.end(),
                                   [&](std::size_t x, std::size_t y) { return m(x, x) < m(y, y); });
    const std::size_t p = *piv_it;
    const mpq_class pivot = m(p, p);
    if (pivot < 0) {
      out.psd = false;
      out.pivot_index = p;
      out.pivot_value = pivot.get_d();
      out.detail = "negative pivot at row " + std::to_string(p) + " (value " + pivot.get_str() + ")";
      return out;
    }
    if (pivot == 0) {
      // Every remaining diagonal entry is <= 0 here, so PSD forces the rest to vanish.
      for (auto i : remaining) {
        for (auto j : remaining) {
          if (m(i, j) != 0) {
            out.psd = false;
            out.pivot_index = i;
            out.pivot_value = m(i, i).get_d();
            out.detail = "zero pivot at row " + std::to_string(i) + " with nonzero entry in column " +
                         std::to_string(j);
            return out;
          }
        }
      }
      return out;
    }
    remaining.erase(piv_it);
    for (auto i : remaining) {
      if (m(i, p) == 0) continue;
      const mpq_class f = m(i, p) / pivot;
      for (auto j : remaining) m(i, j) -= f * m(p, j);
    }
  }
  return out;
}

double log2_rational(const mpq_class& q) {
  if (q <= 0) return -INFINITY;
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log2(mn) - std::log2(md) + double(en - ed);
}

namespace {

RationalMatrix rational_word(const Word& word, const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out = RationalMatrix::identity(a.dim());
  for (char c : word.letters()) out = out * (c == 'A' ? a : b);
  return out;
}

mpq_class pow2k(mpq_class x, unsigned k) {
  for (unsigned i = 0; i < k; ++i) x *= x;
  return x;
}

}  // namespace

std::string to_string(CertifyStatus s) {
  switch (s) {
    case CertifyStatus::certified:
      return "certified";
    case CertifyStatus::not_separated:
      return "not_separated";
    case CertifyStatus::not_psd:
      return "not_psd";
  }
  return "unknown";
}

CertifyOutcome certify(const Word& word, const SymMatrix& a, const SymMatrix& b, unsigned k) {
  if (a.dim() != b.dim()) throw DimensionError("certify needs matrices of equal size");
  CertifyOutcome out;
  out.k = k;
  const auto ra = RationalMatrix::from_doubles(a.matrix());
  const auto rb = RationalMatrix::from_doubles(b.matrix());
  out.psd_a = exact_psd_check(ra);
  out.psd_b = exact_psd_check(rb);
  if (!out.psd_a.psd || !out.psd_b.psd) {
    out.status = CertifyStatus::not_psd;
    out.reason = !out.psd_a.psd ? "A is not PSD: " + out.psd_a.detail : "B is not PSD: " + out.psd_b.detail;
    return out;
  }

  const auto w = rational_word(word, ra, rb);
  const auto o = rational_word(ordered(word), ra, rb);
  const auto sw = w.transpose() * w;
  const auto so = o.transpose() * o;

  const std::size_t n = a.dim();
  const auto xf = spectral_norm(eval_word(word, a.matrix(), b.matrix())).maximizer;
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = mpq_class(xf[i]);
  mpq_class num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    den += x[i] * x[i];
    for (std::size_t j = 0; j < n; ++j) num += x[i] * sw(i, j) * x[j];
  }
  const mpq_class lower = num / den;

  RationalMatrix sp = so;
  for (unsigned i = 0; i < k; ++i) sp = sp * sp;
  const mpq_class trace_p = sp.trace();
  const double p = std::ldexp(1.0, static_cast<int>(k));

  out.rayleigh_lower = lower.get_d();
  out.power_trace_upper = trace_p > 0 ? std::exp2(log2_rational(trace_p) / p) : 0.0;

  if (lower > 0 && pow2k(lower, k) > trace_p) {
    out.status = CertifyStatus::certified;
    out.certificate = Certificate{k, out.rayleigh_lower, out.power_trace_upper, lower.get_str()};
  } else {
    out.status = CertifyStatus::not_separated;
    out.reason = "Rayleigh lower bound does not exceed the power-trace upper bound at k = " + std::to_string(k);
  }
  return out;
}

CertifyOutcome certify_escalating(const Word& word, const SymMatrix& a, const SymMatrix& b, unsigned k_min,
                                  unsigned k_max) {
  CertifyOutcome out;
  for (unsigned k = k_min; k <= k_max; ++k) {
    out = certify(word, a, b, k);
    if (out.status != CertifyStatus::not_separated) break;
  }
  return out;
}

}  // namespace rearr
