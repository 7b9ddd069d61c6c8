#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rearr/matrix.hpp"
#include "rearr/rng.hpp"
#include "rearr/word.hpp"

namespace rearr {

/// Raised when an iterative kernel fails to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k belongs to values[k]

  std::vector<double> vector(std::size_t k) const;
};

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiRelTol = 1e-14;

/// Cyclic Jacobi eigensolver. Stops once the off-diagonal Frobenius mass is
/// at most 1e-14 * ||M||_F; throws NumericalError after 100 sweeps. Each
/// eigenvector is signed so that its largest-magnitude entry is positive.
EigenDecomposition eigen_sym(const SymMatrix& m);

struct SpectralNorm {
  double value = 0.0;
  std::vector<double> maximizer;  // unit vector with ||M v|| = value
};

/// sqrt(lambda_max(M^T M)) together with the top eigenvector of M^T M.
SpectralNorm spectral_norm(const Matrix& m);

/// M^k by repeated squaring; M^0 is the identity.
Matrix power(const Matrix& m, unsigned k);

/// A^{m_1} B^{n_1} ... A^{m_s} B^{n_s}. Throws DimensionError on mismatch.
Matrix eval_word(const Word& word, const Matrix& a, const Matrix& b);

/// Gram matrix G G^T of an N x rank standard-normal factor G.
SymMatrix sample_psd(std::size_t dim, Rng& rng, bool normalize, std::size_t rank);
SymMatrix sample_psd(std::size_t dim, std::uint64_t rng_seed, bool normalize);
SymMatrix sample_psd(std::size_t dim, std::uint64_t rng_seed, bool normalize, std::size_t rank);

/// Q diag(max(lambda,0)^p) Q^T. Throws std::invalid_argument for p < 0.
SymMatrix frac_power(const SymMatrix& m, double p);

/// Smallest singular value of AB - BA.
double commutator_min_sv(const SymMatrix& a, const SymMatrix& b);

/// Scales M to unit spectral norm; the zero matrix is returned unchanged.
SymMatrix normalize_spectral(const SymMatrix& m);

/// Orthonormal basis (columns) of the eigenspace of the top eigenvalue, where
/// membership means lambda >= lambda_1 - rel_tol * |lambda_1|.
std::vector<std::vector<double>> top_eigenspace(const SymMatrix& m, double rel_tol);

}  // namespace rearr
