#include "rearr/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace rearr {

namespace {

Matrix shifted_identity(const Matrix& a, double eps) {
  Matrix out = eps * a;
  for (std::size_t i = 0; i < out.rows(); ++i) out(i, i) += 1.0;
  return out;
}

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("matrices have different sizes (" + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

double sq_norm_times(const Matrix& m, const std::vector<double>& v) {
  const auto mv = m * v;
  return dot(mv, mv);
}

}  // namespace

std::string content_digest(const SymMatrix& a, const SymMatrix& b) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
      h ^= (word >> (8 * i)) & 0xFFU;
      h *= 0x100000001b3ULL;
    }
  };
  for (const SymMatrix* m : {&a, &b}) {
    mix(m->dim());
    for (double x : m->matrix().data()) mix(std::bit_cast<std::uint64_t>(x));
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

GapReport rearrangement_gap(const Word& word, const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  GapReport r{.word = word,
              .dim = a.dim(),
              .norm_word = 0,
              .norm_ordered = 0,
              .gap = 0,
              .certified = CertStatus::float_only,
              .inputs_digest = content_digest(a, b)};
  r.norm_word = spectral_norm(eval_word(word, a, b)).value;
  r.norm_ordered = spectral_norm(eval_word(ordered(word), a, b)).value;
  r.gap = r.norm_ordered - r.norm_word;
  return r;
}

bool is_violation(const GapReport& r) {
  return r.gap < -kViolationRelTol * std::max(r.norm_word, r.norm_ordered);
}

CertificatePair2x2 certificate_2x2(const Word& word, const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  if (a.dim() != 2) throw DimensionError("the 2x2 certificate needs 2x2 matrices");
  // (A^m B^n)^T (A^m B^n) = B^n A^{2m} B^n
  const auto ordered_eig = eigen_sym(SymMatrix(gram(eval_word(ordered(word), a, b))));
  const auto word_eig = eigen_sym(SymMatrix(gram(eval_word(word, a, b))));

  CertificatePair2x2 c;
  c.lambda1 = ordered_eig.values[0];
  c.lambda2 = ordered_eig.values[1];
  c.mu1 = word_eig.values[0];
  c.mu2 = word_eig.values[1];
  c.trace_slack = (c.lambda1 + c.lambda2) - (c.mu1 + c.mu2);
  const double scale = std::max(c.lambda1, c.mu1);
  c.det_mismatch = scale > 0.0 ? std::abs(c.lambda1 * c.lambda2 - c.mu1 * c.mu2) / (scale * scale) : 0.0;

  const bool nonneg = std::min({c.lambda1, c.lambda2, c.mu1, c.mu2}) >= -1e-10 * scale;
  c.valid = nonneg && c.trace_slack >= -1e-9 * std::abs(c.lambda1 + c.lambda2) && c.det_mismatch <= 1e-8 &&
            c.mu1 <= c.lambda1 + 1e-9 * std::abs(c.lambda1);
  return c;
}

TraceInequalityResult trace_inequality_2x2(const SymMatrix& c, const SymMatrix& d,
                                           const std::vector<ExponentPair>& exponents) {
  require_same_dim(c, d);
  if (c.dim() != 2 && c.dim() != 3) throw DimensionError("trace inequality check supports dim 2 (or 3, warn-only)");
  if (exponents.empty()) throw std::invalid_argument("no exponent pairs given");
  double sp = 0, sq = 0;
  for (const auto& e : exponents) {
    if (e.p < 0 || e.q < 0) throw std::invalid_argument("trace exponents must be nonnegative");
    sp += e.p;
    sq += e.q;
  }
  if (std::abs(sp - 1.0) > 1e-12 || std::abs(sq - 1.0) > 1e-12) {
    throw std::invalid_argument("trace exponents must each sum to 1");
  }

  Matrix prod = Matrix::identity(c.dim());
  for (const auto& e : exponents) {
    prod = prod * frac_power(c, e.p).matrix();
    prod = prod * frac_power(d, e.q).matrix();
  }
  TraceInequalityResult r;
  r.trace_cd = (c.matrix() * d.matrix()).trace();
  r.slack = r.trace_cd - prod.trace();
  r.warn_only = c.dim() == 3;
  r.pass = r.slack >= -1e-9 * std::abs(r.trace_cd);
  return r;
}

Lemma1Result lemma1_projection(const Word& word, const SymMatrix& a, const SymMatrix& b,
                               const std::vector<double>& eps_list) {
  require_same_dim(a, b);
  const double m = word.total_a();
  const double n = word.total_b();
  const SymMatrix y(m * a.matrix() + n * b.matrix());
  const auto basis = top_eigenspace(y, kEigenspaceRelTol);

  Lemma1Result out;
  out.eigenspace_dim = basis.size();
  double num = 0, den = 0;
  for (double eps : eps_list) {
    const Matrix x = eval_word(word, shifted_identity(a, eps), shifted_identity(b, eps));
    auto v = spectral_norm(x).maximizer;
    std::vector<double> w = v;
    double proj_sq = 0;
    for (const auto& e : basis) {
      const double c = dot(e, v);
      proj_sq += c * c;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * e[i];
    }
    const double proj = std::sqrt(proj_sq);
    const double res = norm2(w);
    // 1 - |pi v| = |w|^2 / (1 + |pi v|) avoids cancellation for |w| << 1.
    Lemma1Point p{eps, res * res / (1.0 + proj), res};
    out.points.push_back(p);
    num += p.one_minus_proj * eps;
    den += eps * eps;
  }
  out.c1 = den > 0 ? num / den : 0.0;

  std::vector<Lemma1Point> asc = out.points;
  std::sort(asc.begin(), asc.end(), [](const auto& l, const auto& r) { return l.eps < r.eps; });
  for (const auto& p : asc) {
    if (p.one_minus_proj > out.c1 * p.eps) break;
    out.bound_threshold = p.eps;
  }

  auto spread = [&](auto field) {
    double lo = INFINITY, hi = 0;
    for (const auto& p : out.points) {
      const double r = field(p) / p.eps;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi == 0) return 1.0;
    return lo > 0 ? hi / lo : INFINITY;
  };
  out.c1_spread = spread([](const Lemma1Point& p) { return p.one_minus_proj; });
  out.residual_spread = spread([](const Lemma1Point& p) { return p.residual; });
  return out;
}

namespace {

struct ThirdOrderGaps {
  double aba;  // <AABv,v> - <ABAv,v> = <[A,B] v, A v>
  double bab;  // <ABBv,v> - <BABv,v> = -<[A,B] v, B v>
};

ThirdOrderGaps third_order_gaps(const Matrix& a, const Matrix& b, const std::vector<double>& v) {
  const auto av = a * v;
  const auto bv = b * v;
  const auto abv = a * bv;
  const auto bav = b * av;
  std::vector<double> cv(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) cv[i] = abv[i] - bav[i];
  return {dot(cv, av), -dot(cv, bv)};
}

}  // namespace

Lemma2Result lemma2_gaps(unsigned m, unsigned n, const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  if (m == 0 || n == 0) throw std::invalid_argument("lemma 2 needs m, n >= 1");
  const SymMatrix y(double(m) * a.matrix() + double(n) * b.matrix());
  const auto basis = top_eigenspace(y, kEigenspaceRelTol);
  Lemma2Result r;
  r.eigenspace_dim = basis.size();
  r.gap_aba = INFINITY;
  r.gap_bab = INFINITY;
  for (const auto& v : basis) {
    const auto g = third_order_gaps(a, b, v);
    r.gap_aba = std::min(r.gap_aba, g.aba);
    r.gap_bab = std::min(r.gap_bab, g.bab);
  }
  r.min_sv = commutator_min_sv(a, b);
  return r;
}

Theorem2Result theorem2_third_order(const Word& word, const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  if (is_transpose_of_ordered(word)) {
    throw std::invalid_argument("word " + word.letters() +
                                " has the same norm as its ordering for all symmetric A, B; no third-order term");
  }
  const unsigned m = word.total_a();
  const unsigned n = word.total_b();
  const auto coeffs = extract_coeffs(word);
  Theorem2Result r;
  r.a3 = coeffs(3).get_si();
  r.a7 = coeffs(7).get_si();
  r.a10 = coeffs(10).get_si();
  r.min_sv = commutator_min_sv(a, b);

  const Matrix y = double(m) * a.matrix() + double(n) * b.matrix();
  const auto v = eigen_sym(SymMatrix(y)).vector(0);
  const auto g = third_order_gaps(a, b, v);
  r.coeff3 = 2.0 * r.a7 * g.aba + 2.0 * r.a10 * g.bab;

  const Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  r.a3_term = 2.0 * r.a3 * dot(comm * v, y * v);

  const Word ord = ordered(word);
  for (double eps : kRichardsonEps) {
    const Matrix ae = shifted_identity(a, eps);
    const Matrix be = shifted_identity(b, eps);
    const Matrix x = eval_word(word, ae, be);
    const Matrix z = eval_word(ord, ae, be);
    const auto ve = spectral_norm(x).maximizer;
    r.scaled_differences.push_back((sq_norm_times(z, ve) - sq_norm_times(x, ve)) / (eps * eps * eps));
  }
  // f(eps) = c + c1 eps + c2 eps^2 + ...; eliminate c1 and c2 on eps, eps/2, eps/4.
  const auto& f = r.scaled_differences;
  r.numeric_fit = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
  r.rel_error = r.coeff3 != 0.0 ? std::abs(r.numeric_fit - r.coeff3) / std::abs(r.coeff3) : INFINITY;
  return r;
}

Epsilon0Result epsilon0_search(const Word& word, const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  Epsilon0Result r;
  bool prefix_ok = true;
  for (int k = 40; k >= 1; --k) {
    const double eps = std::ldexp(1.0, -k);
    const SymMatrix ae(shifted_identity(a, eps));
    const SymMatrix be(shifted_identity(b, eps));
    const double gap = rearrangement_gap(word, ae, be).gap;
    if (gap < -1e-12) {
      prefix_ok = false;
      r.failing_eps.push_back(eps);
    } else if (prefix_ok) {
      r.eps0 = eps;
    }
  }
  std::reverse(r.failing_eps.begin(), r.failing_eps.end());
  return r;
}

ClassicalConfig ClassicalConfig::defaults() {
  ClassicalConfig c;
  for (int i = 0; i <= 10; ++i) {
    c.s_grid.push_back(i / 10.0);
    c.alpha_grid.push_back(i / 10.0);
  }
  return c;
}

namespace {

void record(InequalityCheck& chk, double lhs, double rhs) {
  const double scale = std::max(std::abs(rhs), std::abs(lhs));
  const double slack = rhs - lhs;
  const double rel = scale > 0 ? slack / scale : 0.0;
  chk.worst_rel_slack = chk.cases == 0 ? rel : std::min(chk.worst_rel_slack, rel);
  ++chk.cases;
  if (slack < -kClassicalRelTol * scale) chk.pass = false;
}

Matrix gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(rows, cols);
  for (double& x : g.data()) x = rng.normal();
  return g;
}

}  // namespace

std::vector<InequalityCheck> classical_suite(const SymMatrix& a, const SymMatrix& b,
                                             const ClassicalConfig& config, Rng& rng) {
  require_same_dim(a, b);
  const std::size_t dim = a.dim();
  const Matrix& am = a.matrix();
  const Matrix& bm = b.matrix();
  auto nrm = [](const Matrix& m) { return spectral_norm(m).value; };

  InequalityCheck hl{"heinz_lowner"};
  record(hl, nrm(am * bm * am), nrm(am * am * bm));

  InequalityCheck cordes{"cordes"};
  const double ab = nrm(am * bm);
  for (double s : config.s_grid) {
    record(cordes, nrm(frac_power(a, s).matrix() * frac_power(b, s).matrix()), std::pow(ab, s));
  }

  InequalityCheck furuta{"furuta"};
  for (unsigned k = 1; k <= config.furuta_max_n; ++k) {
    record(furuta, std::pow(ab, k), nrm(power(am, k) * power(bm, k)));
  }

  InequalityCheck mcintosh{"mcintosh"};
  const Matrix a2 = am * am;
  const Matrix b2 = bm * bm;
  for (std::size_t t = 0; t < config.random_samples; ++t) {
    const Matrix x = gaussian(dim, dim, rng);
    record(mcintosh, nrm(am * x * bm), std::sqrt(nrm(a2 * x) * nrm(x * b2)));
  }

  InequalityCheck hk{"heinz_kato"};
  for (std::size_t t = 0; t < config.random_samples; ++t) {
    const Matrix tm = gaussian(dim, dim, rng);
    // ||T x|| = ||A x|| and ||T^T y|| = ||B y||, so both premises hold with equality.
    const SymMatrix ahk = frac_power(SymMatrix(gram(tm)), 0.5);
    const SymMatrix bhk = frac_power(SymMatrix(gram(tm.transpose())), 0.5);
    std::vector<double> x(dim), y(dim);
    for (auto& e : x) e = rng.normal();
    for (auto& e : y) e = rng.normal();
    const double lhs = std::abs(dot(tm * x, y));
    for (double alpha : config.alpha_grid) {
      const double rhs = norm2(frac_power(ahk, alpha).matrix() * x) * norm2(frac_power(bhk, 1.0 - alpha).matrix() * y);
      record(hk, lhs, rhs);
    }
  }
  return {hl, cordes, furuta, mcintosh, hk};
}

RechtReResult recht_re_check(const std::vector<SymMatrix>& matrices, unsigned m) {
  const std::size_t n = matrices.size();
  if (n == 0 || m == 0) throw std::invalid_argument("Recht-Re check needs n >= 1 matrices and m >= 1");
  if (m > n) throw std::invalid_argument("Recht-Re check needs m <= n");
  const std::size_t dim = matrices.front().dim();
  for (const auto& x : matrices) {
    if (x.dim() != dim) throw DimensionError("Recht-Re matrices must share one size");
  }
  double tuples = std::pow(double(n), double(m));
  if (tuples > double(kRechtReMaxTuples)) {
    throw BudgetError("Recht-Re enumeration of " + std::to_string(static_cast<long long>(tuples)) +
                      " tuples exceeds the budget of " + std::to_string(kRechtReMaxTuples));
  }

  Matrix all(dim, dim), distinct(dim, dim);
  std::vector<std::size_t> idx(m, 0);
  while (true) {
    Matrix prod = matrices[idx[0]].matrix();
    for (unsigned k = 1; k < m; ++k) prod = prod * matrices[idx[k]].matrix();
    all += prod;
    bool unique = true;
    for (unsigned i = 0; i < m && unique; ++i)
      for (unsigned j = i + 1; j < m; ++j)
        if (idx[i] == idx[j]) {
          unique = false;
          break;
        }
    if (unique) distinct += prod;
    unsigned pos = 0;
    while (pos < m && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == m) break;
  }

  double falling = 1.0;  // n! / (n-m)!
  for (unsigned k = 0; k < m; ++k) falling *= double(n - k);

  RechtReResult r;
  r.lhs = spectral_norm(all).value / std::pow(double(n), double(m));
  r.rhs = spectral_norm(distinct).value / falling;
  r.slack = r.lhs - r.rhs;

  Matrix mean(dim, dim);
  for (const auto& x : matrices) mean += x.matrix();
  mean *= 1.0 / double(n);
  r.crosscheck_error = std::abs(r.lhs - spectral_norm(power(mean, m)).value);
  return r;
}

}  // namespace rearr
