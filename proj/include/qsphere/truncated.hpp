#pragma once

// Finite matrix representations of AlgebraElements on the window
// W = ({0..N} u {inf})^n, ordered lexicographically with inf last.
//
// Entry (u, v) of to_matrix(f) sums, over the shifts (z, x) of f whose target
// u stays in the window, e^{i z theta} * prod_{inf slots} e^{i x_j phi_j} *
// f_{(z,x)}(v). Only interior columns are exact (see interior_mask).

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qsphere/algebra.hpp"

namespace qsphere {

struct ReprConfig {
  std::size_t n = 1;
  long N = 1;
  double q = 0.5;
  double theta = 0.0;
  std::vector<double> phi;  // one angle per slot; empty means all zero

  /// Throws Error(InvalidArgument) on N < 1, q outside (0,1) or angles outside [0, 2pi).
  void validate() const;
  double phi_at(std::size_t slot) const { return phi.empty() ? 0.0 : phi[slot]; }
};

/// Index arithmetic on the window.
class Window {
 public:
  Window(std::size_t n, long N);

  std::size_t n() const { return n_; }
  long N() const { return N_; }
  std::size_t size() const { return size_; }
  std::size_t index(const Unit& w) const;
  Unit unit(std::size_t index) const;

 private:
  std::size_t n_;
  long N_;
  std::size_t size_;
};

class TruncatedMatrix {
 public:
  TruncatedMatrix(ReprConfig cfg, std::size_t dim);

  static TruncatedMatrix identity(const ReprConfig& cfg);

  const ReprConfig& config() const { return cfg_; }
  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const { return data_; }

  TruncatedMatrix& operator+=(const TruncatedMatrix& o);
  TruncatedMatrix& operator-=(const TruncatedMatrix& o);
  TruncatedMatrix& operator*=(Complex s);
  friend TruncatedMatrix operator+(TruncatedMatrix a, const TruncatedMatrix& b) { return a += b; }
  friend TruncatedMatrix operator-(TruncatedMatrix a, const TruncatedMatrix& b) { return a -= b; }
  friend TruncatedMatrix operator*(Complex s, TruncatedMatrix a) { return a *= s; }

 private:
  ReprConfig cfg_;
  std::size_t dim_;
  std::vector<Complex> data_;
};

TruncatedMatrix to_matrix(const AlgebraElement& f, const ReprConfig& cfg);

/// The same entries column by column, rows ascending, zeros omitted.
struct SparseColumns {
  std::size_t dim = 0;
  std::vector<std::vector<std::pair<std::size_t, Complex>>> cols;
};
SparseColumns to_sparse(const AlgebraElement& f, const ReprConfig& cfg);

/// Skips zero entries of a, so band-sparse products cost nnz(a) * dim.
TruncatedMatrix multiply(const TruncatedMatrix& a, const TruncatedMatrix& b);
TruncatedMatrix adjoint(const TruncatedMatrix& m);

/// Units whose finite coordinates all lie in [B, N - B]; inf always allowed.
/// Throws Error(InvalidArgument) when 2B > N.
std::vector<std::size_t> interior_mask(const ReprConfig& cfg, long B);
/// Indices of units with only finite coordinates.
std::vector<std::size_t> finite_mask(const ReprConfig& cfg);

double max_abs(const TruncatedMatrix& m);
double max_abs_on_columns(const TruncatedMatrix& m, std::span<const std::size_t> cols);
double max_abs_on_block(const TruncatedMatrix& m, std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols);

/// Dense Hermitian matrix, row-major, as consumed by the eigensolver.
struct HermitianInput {
  std::size_t dim = 0;
  std::vector<Complex> data;
};

/// Cyclic complex Jacobi; sweeps until the off-diagonal Frobenius norm drops
/// below kJacobiTolerance * max(1, ||A||_F). Throws Error(NotHermitian) when
/// |A - A^H| exceeds 1e-10. Eigenvalues sorted ascending.
std::vector<double> hermitian_spectrum(const HermitianInput& a);
std::vector<double> hermitian_spectrum(const TruncatedMatrix& m);
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;

/// Power iteration on M^H M (200 iterations or relative change < 1e-12).
double op_norm_estimate(const TruncatedMatrix& m);

/// Numerical rank of the Gram matrix <A_a, A_b> = sum over masked columns of
/// conj(A_a) A_b: the number of singular values (square roots of Gram
/// eigenvalues) above tol * largest. Throws on an empty list.
std::size_t gram_rank(std::span<const TruncatedMatrix> matrices, std::span<const std::size_t> cols,
                      double tol);
/// Sorted Gram eigenvalues (squared singular values), for reporting the gap
/// around the rank cut. Both functions use one-sided Jacobi on the stacked
/// vectors rather than diagonalizing the Gram matrix itself.
std::vector<double> gram_spectrum(std::span<const TruncatedMatrix> matrices,
                                  std::span<const std::size_t> cols);

/// `%%GroupoidMatrix n=.. N=.. theta=.. phi=..` then `row col re im` per
/// nonzero entry, 17 significant digits, row-major order.
std::string export_matrix(const TruncatedMatrix& m);

}  // namespace qsphere
