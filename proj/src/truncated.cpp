#include "qsphere/truncated.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace qsphere {

void ReprConfig::validate() const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "window cutoff N must be >= 1");
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidArgument, "q must lie in (0,1)");
  auto check_angle = [](double a) {
    if (!(a >= 0.0 && a < 2.0 * std::numbers::pi)) {
      throw Error(ErrorCode::InvalidArgument, "angles must lie in [0, 2pi)");
    }
  };
  check_angle(theta);
  if (!phi.empty() && phi.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "phi needs one angle per slot");
  }
  for (double a : phi) check_angle(a);
}

Window::Window(std::size_t n, long N) : n_(n), N_(N), size_(1) {
  for (std::size_t i = 0; i < n; ++i) size_ *= static_cast<std::size_t>(N + 2);
}

std::size_t Window::index(const Unit& w) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    const long digit = w[i].is_inf() ? N_ + 1 : w[i].value();
    idx = idx * static_cast<std::size_t>(N_ + 2) + static_cast<std::size_t>(digit);
  }
  return idx;
}

Unit Window::unit(std::size_t index) const {
  Unit w(n_);
  for (std::size_t i = n_; i-- > 0;) {
    const long digit = static_cast<long>(index % static_cast<std::size_t>(N_ + 2));
    index /= static_cast<std::size_t>(N_ + 2);
    w[i] = digit == N_ + 1 ? kInf : ExtNat(digit);
  }
  return w;
}

TruncatedMatrix::TruncatedMatrix(ReprConfig cfg, std::size_t dim)
    : cfg_(std::move(cfg)), dim_(dim), data_(dim * dim, Complex(0.0)) {}

TruncatedMatrix TruncatedMatrix::identity(const ReprConfig& cfg) {
  const Window win(cfg.n, cfg.N);
  TruncatedMatrix m(cfg, win.size());
  for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) = 1.0;
  return m;
}

TruncatedMatrix& TruncatedMatrix::operator+=(const TruncatedMatrix& o) {
  if (o.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

TruncatedMatrix& TruncatedMatrix::operator-=(const TruncatedMatrix& o) {
  if (o.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

TruncatedMatrix& TruncatedMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

SparseColumns to_sparse(const AlgebraElement& f, const ReprConfig& cfg) {
  cfg.validate();
  if (f.dim() != cfg.n) throw Error(ErrorCode::InvalidArgument, "element and window dimensions differ");
  const Window win(cfg.n, cfg.N);
  SparseColumns m{win.size(), std::vector<std::vector<std::pair<std::size_t, Complex>>>(win.size())};
  Unit target(cfg.n);
  for (std::size_t col = 0; col < win.size(); ++col) {
    const Unit v = win.unit(col);
    bool on_faces = true;
    for (std::size_t j = 0; j < cfg.n; ++j) {
      if (f.is_pinned(j) && !v[j].is_inf()) on_faces = false;
    }
    if (!on_faces) continue;
    auto& entries = m.cols[col];
    for (const auto& [s, c] : f.terms()) {
      double angle = static_cast<double>(s.z) * cfg.theta;
      bool inside = true;
      for (std::size_t j = 0; j < cfg.n && inside; ++j) {
        if (v[j].is_inf()) {
          target[j] = kInf;
          angle += static_cast<double>(s.x[j]) * cfg.phi_at(j);
        } else {
          const long u = v[j].value() + s.x[j];
          inside = u >= 0 && u <= cfg.N;
          target[j] = u;
        }
      }
      if (!inside) continue;
      const Complex value = eval(c, v, cfg.q);
      if (value == Complex(0.0)) continue;
      entries.emplace_back(win.index(target), std::polar(1.0, angle) * value);
    }
    // Shifts differing only in z land on the same row.
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::size_t, Complex>> merged;
    for (const auto& e : entries) {
      if (!merged.empty() && merged.back().first == e.first) {
        merged.back().second += e.second;
      } else {
        merged.push_back(e);
      }
    }
    std::erase_if(merged, [](const auto& e) { return e.second == Complex(0.0); });
    entries = std::move(merged);
  }
  return m;
}

TruncatedMatrix to_matrix(const AlgebraElement& f, const ReprConfig& cfg) {
  const SparseColumns s = to_sparse(f, cfg);
  TruncatedMatrix m(cfg, s.dim);
  for (std::size_t col = 0; col < s.dim; ++col) {
    for (const auto& [row, v] : s.cols[col]) m(row, col) = v;
  }
  return m;
}

TruncatedMatrix multiply(const TruncatedMatrix& a, const TruncatedMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  const std::size_t d = a.dim();
  TruncatedMatrix c(a.config(), d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const Complex bkj = b(k, j);
        if (bkj != Complex(0.0)) c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

TruncatedMatrix adjoint(const TruncatedMatrix& m) {
  TruncatedMatrix out(m.config(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

std::vector<std::size_t> interior_mask(const ReprConfig& cfg, long B) {
  if (B < 0 || 2 * B > cfg.N) {
    throw Error(ErrorCode::InvalidArgument, "interior bandwidth must satisfy 0 <= 2B <= N");
  }
  const Window win(cfg.n, cfg.N);
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < win.size(); ++idx) {
    const Unit w = win.unit(idx);
    bool ok = true;
    for (const auto& v : w) {
      if (!v.is_inf() && (v.value() < B || v.value() > cfg.N - B)) ok = false;
    }
    if (ok) out.push_back(idx);
  }
  return out;
}

std::vector<std::size_t> finite_mask(const ReprConfig& cfg) {
  const Window win(cfg.n, cfg.N);
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < win.size(); ++idx) {
    if (!in_boundary(win.unit(idx))) out.push_back(idx);
  }
  return out;
}

double max_abs(const TruncatedMatrix& m) {
  double r = 0.0;
  for (const auto& v : m.data()) r = std::max(r, std::abs(v));
  return r;
}

double max_abs_on_columns(const TruncatedMatrix& m, std::span<const std::size_t> cols) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t c : cols) r = std::max(r, std::abs(m(i, c)));
  }
  return r;
}

double max_abs_on_block(const TruncatedMatrix& m, std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols) {
  double r = 0.0;
  for (std::size_t i : rows) {
    for (std::size_t c : cols) r = std::max(r, std::abs(m(i, c)));
  }
  return r;
}

std::vector<double> hermitian_spectrum(const HermitianInput& in) {
  const std::size_t d = in.dim;
  std::vector<Complex> a = in.data;
  auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * d + c]; };

  double fro2 = 0.0;
  double scale = 0.0;
  for (const auto& v : a) {
    fro2 += std::norm(v);
    scale = std::max(scale, std::abs(v));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      if (std::abs(at(i, j) - std::conj(at(j, i))) > kHermitianTolerance * std::max(1.0, scale)) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
      }
    }
  }
  const double target = kJacobiTolerance * std::max(1.0, std::sqrt(fro2));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (i != j) off2 += std::norm(at(i, j));
      }
    }
    if (std::sqrt(off2) < target) break;

    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const Complex g = at(p, q);
        const double abs_g = std::abs(g);
        if (abs_g == 0.0) continue;
        const Complex phase = g / abs_g;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double zeta = (aqq - app) / (2.0 * abs_g);
        const double t = zeta == 0.0 ? 1.0
                                     : std::copysign(1.0, zeta) /
                                           (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex cphase = std::conj(phase);
        for (std::size_t k = 0; k < d; ++k) {
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = c * akp - s * cphase * akq;
          at(k, q) = s * akp + c * cphase * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const Complex apk = at(p, k);
          const Complex aqk = at(q, k);
          at(p, k) = c * apk - s * phase * aqk;
          at(q, k) = s * apk + c * phase * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();
      }
    }
  }

  std::vector<double> eig(d);
  for (std::size_t i = 0; i < d; ++i) eig[i] = at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> hermitian_spectrum(const TruncatedMatrix& m) {
  HermitianInput in{m.dim(), std::vector<Complex>(m.data().begin(), m.data().end())};
  return hermitian_spectrum(in);
}

double op_norm_estimate(const TruncatedMatrix& m) {
  const std::size_t d = m.dim();
  if (d == 0) return 0.0;
  std::vector<Complex> v(d, Complex(1.0 / std::sqrt(static_cast<double>(d))));
  std::vector<Complex> w(d), u(d);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    std::fill(w.begin(), w.end(), Complex(0.0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) w[i] += m(i, j) * v[j];
    }
    std::fill(u.begin(), u.end(), Complex(0.0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) u[j] += std::conj(m(i, j)) * w[i];
    }
    double norm = 0.0;
    for (const auto& x : u) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t i = 0; i < d; ++i) v[i] = u[i] / norm;
    const bool converged = std::abs(norm - lambda) < 1e-12 * norm;
    lambda = norm;
    if (converged) break;
  }
  return std::sqrt(lambda);
}

namespace {

// Singular values of the stacked masked vectors by one-sided (Hestenes)
// Jacobi: equal to square roots of the Gram eigenvalues, without squaring
// the condition number. Sorted ascending.
std::vector<double> stacked_singular_values(std::span<const TruncatedMatrix> matrices,
                                            std::span<const std::size_t> cols) {
  if (matrices.empty()) throw Error(ErrorCode::InvalidArgument, "gram_rank needs at least one matrix");
  const std::size_t k = matrices.size();
  const std::size_t d = matrices[0].dim();
  for (const auto& m : matrices) {
    if (m.dim() != d) throw Error(ErrorCode::InvalidArgument, "inconsistent matrix dimensions");
  }
  std::vector<std::vector<Complex>> v(k);
  for (std::size_t a = 0; a < k; ++a) {
    v[a].reserve(d * cols.size());
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c : cols) v[a].push_back(matrices[a](r, c));
    }
  }
  const std::size_t len = d * cols.size();
  auto dot = [&](std::size_t a, std::size_t b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < len; ++i) s += std::conj(v[a][i]) * v[b][i];
    return s;
  };

  // Rotations preserve the total; pairs far below it are left alone.
  double total = 0.0;
  for (std::size_t a = 0; a < k; ++a) total += dot(a, a).real();
  const double negligible = 1e-32 * total;

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double alpha = dot(p, p).real();
        const double beta = dot(q, q).real();
        const Complex g = dot(p, q);
        const double abs_g = std::abs(g);
        if (abs_g <= negligible || abs_g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex cphase = std::conj(g / abs_g);
        const double zeta = (beta - alpha) / (2.0 * abs_g);
        const double t = zeta == 0.0 ? 1.0
                                     : std::copysign(1.0, zeta) /
                                           (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t i = 0; i < len; ++i) {
          const Complex vp = v[p][i];
          const Complex vq = v[q][i];
          v[p][i] = c * vp - s * cphase * vq;
          v[q][i] = s * vp + c * cphase * vq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(k);
  for (std::size_t a = 0; a < k; ++a) sv[a] = std::sqrt(dot(a, a).real());
  std::sort(sv.begin(), sv.end());
  return sv;
}

}  // namespace

std::vector<double> gram_spectrum(std::span<const TruncatedMatrix> matrices,
                                  std::span<const std::size_t> cols) {
  auto sv = stacked_singular_values(matrices, cols);
  for (auto& x : sv) x *= x;
  return sv;
}

std::size_t gram_rank(std::span<const TruncatedMatrix> matrices, std::span<const std::size_t> cols,
                      double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "rank tolerance must be > 0");
  const auto sv = stacked_singular_values(matrices, cols);
  const double largest = sv.back();
  if (largest == 0.0) return 0;
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [&](double x) { return x > tol * largest; }));
}

std::string export_matrix(const TruncatedMatrix& m) {
  const auto& cfg = m.config();
  char buf[128];
  std::string out = "%%GroupoidMatrix n=" + std::to_string(cfg.n) + " N=" + std::to_string(cfg.N);
  std::snprintf(buf, sizeof buf, " theta=%.17g phi=", cfg.theta);
  out += buf;
  for (std::size_t j = 0; j < cfg.n; ++j) {
    std::snprintf(buf, sizeof buf, "%s%.17g", j ? "," : "", cfg.phi_at(j));
    out += buf;
  }
  out += "\n";
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const Complex v = m(r, c);
      if (v == Complex(0.0)) continue;
      std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g\n", r, c, v.real(), v.imag());
      out += buf;
    }
  }
  return out;
}

}  // namespace qsphere
