#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rearr/matrix.hpp"
#include "rearr/word.hpp"

namespace rearr {

/// Square matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), data_(n * n) {}
  /// Exact dyadic value of every double entry.
  static RationalMatrix from_doubles(const Matrix& m);
  static RationalMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  RationalMatrix transpose() const;
  mpq_class trace() const;

 private:
  std::size_t n_ = 0;
  std::vector<mpq_class> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Exact PSD test by symmetric elimination with diagonal pivoting.
struct PsdCheck {
  bool psd = true;
  std::size_t pivot_index = 0;  // original row index of the offending pivot
  double pivot_value = 0;       // approximate value of that pivot
  std::string detail;
};

PsdCheck exact_psd_check(const RationalMatrix& m);

/// log2 of a positive rational, accurate to double precision even when the
/// value is far outside the double range.
double log2_rational(const mpq_class& q);

struct Certificate {
  unsigned k = 3;                 // power-trace exponent is 2^k
  double rayleigh_lower = 0;      // exact lower bound on ||W||^2, rounded for display
  double power_trace_upper = 0;   // exact upper bound on ||A^m B^n||^2, rounded for display
  std::string rayleigh_exact;     // "num/den"
};

enum class CertifyStatus { certified, not_separated, not_psd };

struct CertifyOutcome {
  CertifyStatus status = CertifyStatus::not_separated;
  std::optional<Certificate> certificate;
  unsigned k = 0;
  double rayleigh_lower = 0;
  double power_trace_upper = 0;
  PsdCheck psd_a, psd_b;
  std::string reason;

  bool certified() const { return status == CertifyStatus::certified; }
};

inline constexpr unsigned kDefaultPowerTraceK = 3;
inline constexpr unsigned kMaxPowerTraceK = 6;

/// Tries to prove ||W(A,B)|| > ||A^m B^n|| for the exact matrices A, B hold.
/// Lower bound: exact Rayleigh quotient of W^T W at the rationalized float
/// maximizer. Upper bound: lambda_max(S) <= tr(S^p)^(1/p), p = 2^k, for
/// S = (A^m B^n)^T (A^m B^n); compared as lower^p > tr(S^p). A refusal is a
/// normal outcome, not an error.
CertifyOutcome certify(const Word& word, const SymMatrix& a, const SymMatrix& b, unsigned k = kDefaultPowerTraceK);

/// certify with k = k_min, k_min + 1, ... until it succeeds or k_max is tried.
CertifyOutcome certify_escalating(const Word& word, const SymMatrix& a, const SymMatrix& b,
                                  unsigned k_min = kDefaultPowerTraceK, unsigned k_max = kMaxPowerTraceK);

std::string to_string(CertifyStatus s);

}  // namespace rearr
