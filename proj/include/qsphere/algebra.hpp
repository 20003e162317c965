#pragma once

// Shift-band-limited functions on F^n with symbolic coefficients.
//
// An AlgebraElement f is a finite map  Shift (z, x) -> Coeff; its value at the
// groupoid element (z, x, w) is  f_{(z,x)}(w), where w is the source unit.
// Coefficients carry the validity guards Ind(j, -x_j) for negative x_j, so a
// coefficient vanishes wherever (z, x, w) is not a groupoid element.
//
// Elements may be pinned to a face set: for a pinned slot j the element lives
// on F^n|_{F_j}, its coefficients do not reference slot j, and x_j is a
// circle mode of C(T) = C*({inf} x Z).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsphere/coeff.hpp"
#include "qsphere/groupoid.hpp"

namespace qsphere {

/// Bit j set means slot j is pinned to inf.
using FaceMask = std::uint32_t;

inline constexpr FaceMask face_bit(std::size_t slot) { return FaceMask{1} << slot; }

class AlgebraElement {
 public:
  using TermMap = std::map<Shift, Coeff>;

  explicit AlgebraElement(std::size_t n, FaceMask pinned = 0);
  /// Adds validity guards and drops empty coefficients. Throws
  /// Error(DomainError) if a coefficient references a pinned slot.
  AlgebraElement(std::size_t n, TermMap terms, FaceMask pinned = 0);

  static AlgebraElement unit(std::size_t n, FaceMask pinned = 0);
  static AlgebraElement single(std::size_t n, Shift s, Coeff c, FaceMask pinned = 0);

  std::size_t dim() const { return n_; }
  FaceMask pinned() const { return pinned_; }
  bool is_pinned(std::size_t slot) const { return (pinned_ & face_bit(slot)) != 0; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Coefficient at shift s (empty Coeff when absent).
  Coeff coefficient(const Shift& s) const;
  /// Value of the function at a groupoid element (z-mode not applied).
  Complex value_at(const GroupoidElement& g, double q) const;

  /// Largest |x_j| over all terms and slots.
  long bandwidth() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex s, const AlgebraElement& a);
  /// Scalar that may be a q-power or any coefficient without slot atoms.
  friend AlgebraElement operator*(const Coeff& s, const AlgebraElement& a);

  bool operator==(const AlgebraElement& o) const = default;

 private:
  void check_compatible(const AlgebraElement& o) const;

  std::size_t n_ = 0;
  FaceMask pinned_ = 0;
  TermMap terms_;
};

/// (f*g)(gamma) = sum over gamma = alpha beta of f(alpha) g(beta).
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g);
inline AlgebraElement operator*(const AlgebraElement& f, const AlgebraElement& g) {
  return convolve(f, g);
}
/// f*(gamma) = conj f(gamma^{-1}).
AlgebraElement adjoint(const AlgebraElement& f);

/// Tri-state zero test over all coefficients.
ZeroTest is_zero(const AlgebraElement& f);
ZeroTest equal(const AlgebraElement& f, const AlgebraElement& g);

std::string serialize(const AlgebraElement& f);

enum class CertStatus { Certified, Refuted, Unknown };
const char* to_string(CertStatus s);

struct Certificate {
  CertStatus status = CertStatus::Certified;
  /// For Refuted: a groupoid element carrying a nonzero value.
  std::optional<GroupoidElement> witness;
  /// For a refuted invariance: the ~-equivalent partner with a different value.
  std::optional<GroupoidElement> partner;
  double witness_value = 0.0;
  std::string detail;
};

/// Support inside Ftilde_n, checked exactly pattern by pattern.
Certificate support_subset_ftilde(const AlgebraElement& f);
/// Invariance under ~ (values independent of the entries after the first inf).
/// Throws Error(DomainError) unless support_subset_ftilde(f) is Certified.
Certificate sim_invariant(const AlgebraElement& f);
/// Kernel of the boundary restriction.
Certificate vanishes_on_boundary(const AlgebraElement& f);

/// Restriction to the face F_slot; slot-j shifts become circle modes.
AlgebraElement rho_face(const AlgebraElement& f, std::size_t slot);

using BoundaryFamily = std::vector<AlgebraElement>;
BoundaryFamily rho_boundary(const AlgebraElement& f);

/// Pullback along (z,x,w) -> (z,x,w') with w'_{n-1} = inf from an element
/// pinned on the last slot: unpins the last slot. Used for both pi_{n,dF}
/// and pi_{ni}; throws Error(DomainError) if the last slot is not pinned.
AlgebraElement pullback_last_slot(const AlgebraElement& f_on_last_face);
/// pi_{ni}: input pinned on {slot, n-1}, output pinned on {slot}.
AlgebraElement pi_pullback_ni(const AlgebraElement& f, std::size_t slot);
/// pi_{n,dF}: input pinned on the last face; output is its boundary family.
BoundaryFamily pi_pullback_n_boundary(const AlgebraElement& f_on_last_face);

/// rho_{ij}(a_j) == rho_{ji}(a_i) for all i < j, ProvablyZero differences.
bool boundary_compatible(const BoundaryFamily& family);

/// Relabels shifts by phi_* on an element pinned on the last slot.
AlgebraElement transport_phi(const AlgebraElement& f_on_last_face);
/// F^{n-1} -> F^n|_{F_n}: appends a pinned slot with zero shift.
AlgebraElement embed_lower(const AlgebraElement& f);

}  // namespace qsphere
