#pragma once

// Symbolic, infinity-aware scalar functions on the unit space.
//
// Atoms (slot j is 0-based, w_j may be inf):
//   Const(c)        complex constant
//   QPow(k)         q^k, k any integer
//   Pow(j, e, o)    (q^{w_j + o})^e, e >= 1; evaluates to 0 at w_j = inf
//   Sqrt(j, o)      sqrt(1 - q^{2(w_j + o)}); 1 at w_j = inf, 0 when w_j + o < 0
//   Ind(j, m)       [w_j >= m]; 1 at w_j = inf
//
// `Expr` is the free expression tree. `Coeff` is its normal form: a sum of
// monomials  c * q^k * prod_j q^{e_j w_j} * prod Sqrt(j, o) * prod Ind(j, m)
// with one Sqrt per (slot, offset) after the rewrite
//   Sqrt(j,o)^2 -> Ind(j,-o) * (1 - q^{2o} q^{2 w_j}).
// An Ind(j, m) sharing a monomial with Sqrt(j, o) is kept only when m > 1 - o,
// since the Sqrt already vanishes below that threshold.

#include <complex>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsphere/groupoid.hpp"

namespace qsphere {

using Complex = std::complex<double>;

/// Outcome of a zero test; only ProvablyZero certifies vanishing.
enum class ZeroTest { ProvablyZero, ProvablyNonzero, Unknown };

const char* to_string(ZeroTest z);

class Expr {
 public:
  enum class Kind { Const, QPow, Pow, Sqrt, Ind, Sum, Prod };

  static Expr constant(Complex c);
  static Expr qpow(int k);
  static Expr pow(int slot, int exponent, int offset);
  static Expr sqrt(int slot, int offset);
  static Expr ind(int slot, int min);
  static Expr sum(std::vector<Expr> terms);
  static Expr prod(std::vector<Expr> factors);

  Kind kind() const;
  Complex value() const;  // Const
  int slot() const;       // Pow, Sqrt, Ind
  int exponent() const;   // Pow; QPow exponent
  int offset() const;     // Pow, Sqrt; Ind threshold
  const std::vector<Expr>& children() const;  // Sum, Prod

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);

std::string render(const Expr& e);

/// Throws Error(InvalidArgument) if e references a slot outside w or q is not in (0,1).
Complex eval(const Expr& e, std::span<const ExtNat> w, double q);
/// e composed with w -> w + x.
Expr shift(const Expr& e, std::span<const long> x);
/// Substitutes w_slot = inf.
Expr restrict_inf(const Expr& e, int slot);

struct Monomial {
  int q_exp = 0;
  std::vector<std::pair<int, int>> pow;   // (slot, exponent >= 1), sorted by slot
  std::vector<std::pair<int, int>> sqrt;  // (slot, offset), sorted, unique
  std::vector<std::pair<int, int>> ind;   // (slot, threshold >= 1), sorted by slot

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  bool references(int slot) const;
  int max_slot() const;  // -1 for a constant monomial
};

class Coeff {
 public:
  /// Magnitude at or below which a monomial coefficient is treated as zero.
  static constexpr double kDropTolerance = 1e-13;

  Coeff() = default;
  static Coeff constant(Complex c);
  static Coeff one() { return constant(1.0); }
  static Coeff qpow(int k);
  static Coeff pow(int slot, int exponent, int offset);
  static Coeff sqrt(int slot, int offset);
  static Coeff ind(int slot, int min);

  const std::map<Monomial, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool references(int slot) const;
  int max_slot() const;

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator*(Complex s, const Coeff& a);

  bool operator==(const Coeff& o) const = default;

  /// Adds `c * m` after canonicalising m (guards, Ind thresholds).
  void add_monomial(Monomial m, Complex c);

 private:
  std::map<Monomial, Complex> terms_;
};

Coeff normalize(const Expr& e);

Complex eval(const Coeff& c, std::span<const ExtNat> w, double q);
Coeff shift(const Coeff& c, std::span<const long> x);
Coeff restrict_inf(const Coeff& c, int slot);
Coeff conj(const Coeff& c);

/// ProvablyZero iff the normal form is empty; ProvablyNonzero if some probe
/// w in {0,1,2,5,inf}^k, q in {0.3,0.5,0.9} gives |value| > 1e-9.
ZeroTest is_zero(const Coeff& c);
ZeroTest equal(const Coeff& a, const Coeff& b);

/// The fixed probe set used by is_zero for k slots.
std::vector<Unit> probe_units(std::size_t k);
inline constexpr double kProbeQs[] = {0.3, 0.5, 0.9};
inline constexpr double kNonzeroThreshold = 1e-9;

/// Deterministic text rendering of the normal form, e.g.
///   "q^{w1}*S(w2)"  or  "1 - q^{2}*q^{2w1}".
std::string render(const Coeff& c);
std::string render(const Monomial& m);

}  // namespace qsphere
