#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rearr/linalg.hpp"
#include "rearr/ncpoly.hpp"
#include "rearr/rng.hpp"
#include "rearr/word.hpp"

namespace rearr {

enum class CertStatus { float_only, rational_certified };

/// ||A^m B^n|| - ||W(A,B)|| for one pair of matrices.
struct GapReport {
  Word word;
  std::size_t dim = 0;
  double norm_word = 0.0;
  double norm_ordered = 0.0;
  double gap = 0.0;
  CertStatus certified = CertStatus::float_only;
  std::string inputs_digest;
};

/// Relative threshold below which a negative gap counts as a violation rather
/// than roundoff.
inline constexpr double kViolationRelTol = 1e-8;

GapReport rearrangement_gap(const Word& word, const SymMatrix& a, const SymMatrix& b);

/// gap < -1e-8 * max(norm_word, norm_ordered).
bool is_violation(const GapReport& r);

/// FNV-1a over the dimensions and the bit patterns of the entries, as 16 hex
/// digits.
std::string content_digest(const SymMatrix& a, const SymMatrix& b);

/// Spectra used in the 2x2 trace/determinant argument.
struct CertificatePair2x2 {
  double lambda1 = 0, lambda2 = 0;  // spectrum of B^n A^{2m} B^n
  double mu1 = 0, mu2 = 0;          // spectrum of W^T W
  double trace_slack = 0;           // (lambda1 + lambda2) - (mu1 + mu2)
  double det_mismatch = 0;          // |lambda1 lambda2 - mu1 mu2| / max(lambda1, mu1)^2
  bool valid = false;               // all three conditions hold at their tolerances
};

CertificatePair2x2 certificate_2x2(const Word& word, const SymMatrix& a, const SymMatrix& b);

struct ExponentPair {
  double p = 0;
  double q = 0;
};

struct TraceInequalityResult {
  double slack = 0;     // tr(CD) - tr(C^{p1} D^{q1} ... C^{pk} D^{qk})
  double trace_cd = 0;
  bool warn_only = false;  // 3x3 input: a negative slack is reported, not asserted
  bool pass = false;
};

/// Throws std::invalid_argument when sum p != 1 or sum q != 1 (to 1e-12) and
/// DimensionError unless dim is 2 or 3.
TraceInequalityResult trace_inequality_2x2(const SymMatrix& c, const SymMatrix& d,
                                           const std::vector<ExponentPair>& exponents);

/// Relative width of the top eigenspace used by the lemma checks.
inline constexpr double kEigenspaceRelTol = 1e-8;

struct Lemma1Point {
  double eps = 0;
  double one_minus_proj = 0;  // 1 - ||pi v_eps||
  double residual = 0;        // ||v_eps - pi v_eps||
};

struct Lemma1Result {
  std::vector<Lemma1Point> points;
  double c1 = 0;               // least squares fit of one_minus_proj ~ c1 * eps
  double bound_threshold = 0;  // largest eps with one_minus_proj <= c1 eps on and below it
  std::size_t eigenspace_dim = 0;
  /// max/min of one_minus_proj / eps over the points; 1 for a flat profile.
  double c1_spread = 1;
  /// max/min of residual / eps; the first-order distance to the eigenspace.
  double residual_spread = 1;
};

Lemma1Result lemma1_projection(const Word& word, const SymMatrix& a, const SymMatrix& b,
                               const std::vector<double>& eps_list);

struct Lemma2Result {
  double gap_aba = 0;  // <AABv,v> - <ABAv,v>
  double gap_bab = 0;  // <ABBv,v> - <BABv,v>
  double min_sv = 0;   // sigma_min(AB - BA)
  std::size_t eigenspace_dim = 0;
};

/// Gaps at the top eigenvector of mA + nB. A degenerate top eigenspace reports
/// the minimum over an orthonormal basis of it, not over the whole eigenspace.
Lemma2Result lemma2_gaps(unsigned m, unsigned n, const SymMatrix& a, const SymMatrix& b);

struct Theorem2Result {
  double coeff3 = 0;       // 2 a7 gap_aba + 2 a10 gap_bab at v
  double a3_term = 0;      // 2 a3 <(AB - BA) v, (mA + nB) v>, zero in exact arithmetic
  double numeric_fit = 0;  // Richardson limit of (||Z v_eps||^2 - ||X v_eps||^2) / eps^3
  double rel_error = 0;    // |numeric_fit - coeff3| / |coeff3|
  double min_sv = 0;
  long a3 = 0, a7 = 0, a10 = 0;
  std::vector<double> scaled_differences;  // the three D(eps)/eps^3 samples
};

inline const std::vector<double> kRichardsonEps = {1e-2, 5e-3, 2.5e-3};

/// Throws std::invalid_argument for A^m B^n and B^n A^m, whose gap vanishes
/// identically.
Theorem2Result theorem2_third_order(const Word& word, const SymMatrix& a, const SymMatrix& b);

struct Epsilon0Result {
  double eps0 = 0;
  std::vector<double> failing_eps;  // grid points with gap < -1e-12, descending
};

/// Largest eps on {2^-k : 1 <= k <= 40} such that the gap of
/// (Id + eps' A, Id + eps' B) is >= -1e-12 for every grid eps' <= eps.
Epsilon0Result epsilon0_search(const Word& word, const SymMatrix& a, const SymMatrix& b);

struct ClassicalConfig {
  std::vector<double> s_grid;      // Cordes exponents in [0, 1]
  unsigned furuta_max_n = 5;
  std::vector<double> alpha_grid;  // Heinz-Kato exponents in [0, 1]
  std::size_t random_samples = 2;  // X for McIntosh, (T, x, y) for Heinz-Kato

  static ClassicalConfig defaults();
};

struct InequalityCheck {
  std::string name;
  double worst_rel_slack = 0;  // min over cases of slack / scale
  std::size_t cases = 0;
  bool pass = true;
};

inline constexpr double kClassicalRelTol = 1e-9;

/// Heinz-Loewner, Cordes, Furuta, McIntosh on (A, B); Heinz-Kato on pairs
/// built from random T as ((T^T T)^{1/2}, (T T^T)^{1/2}).
std::vector<InequalityCheck> classical_suite(const SymMatrix& a, const SymMatrix& b,
                                             const ClassicalConfig& config, Rng& rng);

struct RechtReResult {
  double lhs = 0;  // n^-m ||sum over all tuples||
  double rhs = 0;  // (n-m)!/n! ||sum over distinct tuples||
  double slack = 0;
  double crosscheck_error = 0;  // |lhs - ||(sum A_j / n)^m|||
};

class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kRechtReMaxTuples = 1'000'000;

RechtReResult recht_re_check(const std::vector<SymMatrix>& matrices, unsigned m);

}  // namespace rearr
