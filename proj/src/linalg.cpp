#include "rearr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rearr {

std::vector<double> EigenDecomposition::vector(std::size_t k) const {
  std::vector<double> v(vectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
  return v;
}

namespace {

double off_diagonal_mass(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eigen_sym(const SymMatrix& sym) {
  const std::size_t n = sym.dim();
  Matrix a = sym.matrix();
  Matrix v = Matrix::identity(n);
  const double tol = kJacobiRelTol * a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= tol) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (!converged) {
    throw NumericalError("Jacobi eigensolver did not converge in " + std::to_string(kJacobiMaxSweeps) +
                         " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    std::size_t big = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(big, src))) big = i;
    const double sign = v(big, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

SpectralNorm spectral_norm(const Matrix& m) {
  const auto eig = eigen_sym(SymMatrix(gram(m)));
  return {std::sqrt(std::max(eig.values.front(), 0.0)), eig.vector(0)};
}

Matrix power(const Matrix& m, unsigned k) {
  if (!m.square()) throw DimensionError("power of a non-square matrix");
  Matrix result = Matrix::identity(m.rows());
  if (k == 0) return result;
  Matrix base = m;
  bool first = true;
  while (true) {
    if (k & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1U;
    if (k == 0) break;
    base = base * base;
  }
  return result;
}

Matrix eval_word(const Word& word, const Matrix& a, const Matrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) {
    throw DimensionError("word evaluation needs square matrices of equal size, got " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  Matrix out = Matrix::identity(a.rows());
  bool first = true;
  auto mul = [&](const Matrix& f) {
    out = first ? f : out * f;
    first = false;
  };
  for (const auto& blk : word.blocks()) {
    if (blk.a) mul(power(a, blk.a));
    if (blk.b) mul(power(b, blk.b));
  }
  return out;
}

SymMatrix normalize_spectral(const SymMatrix& m) {
  const double s = spectral_norm(m.matrix()).value;
  if (s == 0.0) return m;
  return SymMatrix((1.0 / s) * m.matrix(), m.psd_certified());
}

SymMatrix sample_psd(std::size_t dim, Rng& rng, bool normalize, std::size_t rank) {
  if (dim == 0) throw DimensionError("sample_psd needs dim >= 1");
  if (rank == 0 || rank > dim) throw DimensionError("sample_psd rank must lie in [1, dim]");
  Matrix g(dim, rank);
  for (double& x : g.data()) x = rng.normal();
  SymMatrix a(gram(g.transpose()), true);
  return normalize ? normalize_spectral(a) : a;
}

SymMatrix sample_psd(std::size_t dim, std::uint64_t rng_seed, bool normalize) {
  return sample_psd(dim, rng_seed, normalize, dim);
}

SymMatrix sample_psd(std::size_t dim, std::uint64_t rng_seed, bool normalize, std::size_t rank) {
  Rng rng(rng_seed);
  return sample_psd(dim, rng, normalize, rank);
}

SymMatrix frac_power(const SymMatrix& m, double p) {
  if (!(p >= 0.0)) throw std::invalid_argument("fractional power must be nonnegative");
  const auto eig = eigen_sym(m);
  const std::size_t n = m.dim();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = std::pow(std::max(eig.values[k], 0.0), p);
    if (lam == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lam * eig.vectors(i, k) * eig.vectors(j, k);
  }
  return SymMatrix(out, true);
}

double commutator_min_sv(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("commutator of matrices of different size");
  const Matrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  const std::size_t n = a.dim();
  // The eigenvalues of [[0, C], [C^T, 0]] are +-sigma_i(C).
  Matrix aug(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      aug(i, n + j) = c(i, j);
      aug(n + j, i) = c(i, j);
    }
  }
  const auto eig = eigen_sym(SymMatrix(aug));
  return std::abs(eig.values[n - 1]);
}

std::vector<std::vector<double>> top_eigenspace(const SymMatrix& m, double rel_tol) {
  const auto eig = eigen_sym(m);
  const double top = eig.values.front();
  std::vector<std::vector<double>> basis;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] >= top - rel_tol * std::abs(top)) basis.push_back(eig.vector(k));
  }
  return basis;
}

}  // namespace rearr
