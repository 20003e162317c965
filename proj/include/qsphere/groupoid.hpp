#pragma once

// Combinatorics of the n-dimensional Toeplitz groupoid
//   F^n = Z x (Z^n x Zbar^n restricted to Zbar^n_{>=0}),
// its faces, the subgroupoid Ftilde_n cut out by the infinity conditions,
// the saturation relation ~ and the quotient groupoid F_n = Ftilde_n / ~.
//
// Slots are 0-based in this API. Text rendering uses 1-based slot names
// (w1, w2, ...) to match the usual mathematical notation.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsphere/error.hpp"

namespace qsphere {

/// Element of Zbar_{>=0} = {0, 1, 2, ...} u {inf}.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(long value) : value_(value) {}  // NOLINT: implicit by design of unit literals

  static constexpr ExtNat infinity() { return ExtNat(kInf); }

  constexpr bool is_inf() const { return value_ == kInf; }
  /// Finite value; meaningless when is_inf().
  constexpr long value() const { return value_; }

  /// this + x, or nullopt when the result would be a negative integer.
  /// inf + x = inf for every integer x.
  std::optional<ExtNat> plus(long x) const {
    if (is_inf()) return *this;
    if (value_ + x < 0) return std::nullopt;
    return ExtNat(value_ + x);
  }

  constexpr auto operator<=>(const ExtNat&) const = default;

  std::string str() const;

 private:
  static constexpr long kInf = std::numeric_limits<long>::max();
  long value_ = 0;
};

inline constexpr ExtNat kInf = ExtNat::infinity();

std::ostream& operator<<(std::ostream& os, const ExtNat& v);

using Unit = std::vector<ExtNat>;

std::string to_string(const Unit& w);

/// The translation part (z, x) of a groupoid element.
struct Shift {
  long z = 0;
  std::vector<long> x;

  auto operator<=>(const Shift&) const = default;

  std::size_t dim() const { return x.size(); }
  Shift operator+(const Shift& o) const;
  Shift operator-() const;
  bool is_zero() const;
};

std::string to_string(const Shift& s);

class GroupoidElement {
 public:
  /// Throws Error(InvalidUnit) if w or w + x leaves Zbar^n_{>=0}.
  GroupoidElement(long z, std::vector<long> x, Unit w);
  GroupoidElement(Shift s, Unit w);

  static GroupoidElement unit_at(const Unit& w);

  long z() const { return shift_.z; }
  const std::vector<long>& x() const { return shift_.x; }
  const Shift& shift() const { return shift_; }
  const Unit& w() const { return w_; }
  std::size_t dim() const { return w_.size(); }

  const Unit& source() const { return w_; }
  const Unit& range() const { return range_; }
  bool is_unit() const { return shift_.is_zero(); }

  auto operator<=>(const GroupoidElement& o) const {
    if (auto c = shift_ <=> o.shift_; c != 0) return c;
    return w_ <=> o.w_;
  }
  bool operator==(const GroupoidElement& o) const {
    return shift_ == o.shift_ && w_ == o.w_;
  }

  std::string str() const;

 private:
  Shift shift_;
  Unit w_;
  Unit range_;
};

std::ostream& operator<<(std::ostream& os, const GroupoidElement& g);

GroupoidElement make_element(long z, std::vector<long> x, Unit w);

/// g.h, defined when source(g) == range(h); keeps h's unit.
GroupoidElement compose(const GroupoidElement& g, const GroupoidElement& h);
GroupoidElement inverse(const GroupoidElement& g);

bool in_face(const Unit& w, std::size_t slot);
bool in_boundary(const Unit& w);

/// The infinity condition of Ftilde_n at `slot`:
///   x_slot = -z - x_0 - ... - x_{slot-1}  and  x_{slot+1} = ... = x_{n-1} = 0.
bool satisfies_infinity_condition(const Shift& s, std::size_t slot);

bool in_ftilde(const GroupoidElement& g);
/// Ftilde'_{n-1}: last slot infinite and the Ftilde condition at every slot.
bool in_ftilde_prime(const GroupoidElement& g);
/// Ftilde''_{n-1}: unit on the boundary and the Ftilde condition at every slot.
bool in_ftilde_doubleprime(const GroupoidElement& g);
/// Ftilde_{n-1} embedded in F^n|_{F_n}: last slot infinite, x_{n-1} = 0,
/// Ftilde condition at every slot before the last.
bool in_ftilde_lower_embedded(const GroupoidElement& g);

/// Saturates every unit entry after the first infinite one.
/// Throws Error(NotInSubgroupoid) when g is not in Ftilde_n.
GroupoidElement canonicalize(const GroupoidElement& g);
Unit canonicalize_unit(const Unit& w);
bool sim_equivalent(const GroupoidElement& g, const GroupoidElement& h);

/// A class of F_n, stored through its canonical representative.
class CanonicalClass {
 public:
  explicit CanonicalClass(const GroupoidElement& g) : rep_(canonicalize(g)) {}

  const GroupoidElement& rep() const { return rep_; }
  bool operator==(const CanonicalClass& o) const { return rep_ == o.rep_; }

 private:
  GroupoidElement rep_;
};

/// Product in F_n. Representatives need not be canonical; the left factor's
/// unit is replaced by range(b) before composing.
CanonicalClass compose_classes(const GroupoidElement& a, const GroupoidElement& b);
CanonicalClass compose_classes(const CanonicalClass& a, const CanonicalClass& b);
CanonicalClass inverse_class(const CanonicalClass& a);

/// (z, x, w) -> (z, x, w') with w'_{n-1} = inf; requires a boundary unit.
GroupoidElement pi_n_boundary(const GroupoidElement& g);
/// Same map restricted to the face F_slot.
GroupoidElement pi_ni(const GroupoidElement& g, std::size_t slot);

/// The automorphism of F^n|_{F_n} adding -z - sum_{i<n-1} x_i to the last
/// shift coordinate; requires w_{n-1} = inf.
GroupoidElement phi_star(const GroupoidElement& g);
GroupoidElement phi_star_inv(const GroupoidElement& g);

/// F^{n-1} -> F^n|_{F_n}: (z, x, w) -> (z, (x, 0), (w, inf)).
GroupoidElement embed_lower(const GroupoidElement& g);

struct WindowBounds {
  long z_max = 0;
  long x_max = 0;
  long N = 0;
};

/// All valid elements with |z| <= z_max, |x_i| <= x_max, w_i in {0..N, inf};
/// lexicographic in (z, x, w) with inf last.
std::vector<GroupoidElement> enumerate_window(std::size_t n, const WindowBounds& b);

/// All units in ({0..N} u {inf})^n in the same order.
std::vector<Unit> enumerate_units(std::size_t n, long N);

}  // namespace qsphere
