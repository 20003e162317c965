#include "qsphere/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace qsphere {

const char* to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return "Certified";
    case CertStatus::Refuted: return "Refuted";
    case CertStatus::Unknown: return "Unknown";
  }
  return "?";
}

AlgebraElement::AlgebraElement(std::size_t n, FaceMask pinned) : n_(n), pinned_(pinned) {
  if (n == 0 || n > 31) throw Error(ErrorCode::InvalidArgument, "dimension must lie in [1, 31]");
  if (pinned >> n) throw Error(ErrorCode::InvalidArgument, "face mask outside dimension");
}

AlgebraElement::AlgebraElement(std::size_t n, TermMap terms, FaceMask pinned)
    : AlgebraElement(n, pinned) {
  for (auto& [s, c] : terms) {
    if (s.x.size() != n) throw Error(ErrorCode::InvalidArgument, "shift dimension mismatch");
    if (c.empty()) continue;
    Coeff guarded = std::move(c);
    for (std::size_t j = 0; j < n; ++j) {
      if (is_pinned(j)) {
        if (guarded.references(static_cast<int>(j))) {
          throw Error(ErrorCode::DomainError,
                      "coefficient depends on pinned slot " + std::to_string(j + 1));
        }
      } else if (s.x[j] < 0) {
        guarded = guarded * Coeff::ind(static_cast<int>(j), static_cast<int>(-s.x[j]));
      }
    }
    if (!guarded.empty()) terms_.emplace(s, std::move(guarded));
  }
}

AlgebraElement AlgebraElement::unit(std::size_t n, FaceMask pinned) {
  return single(n, Shift{0, std::vector<long>(n, 0)}, Coeff::one(), pinned);
}

AlgebraElement AlgebraElement::single(std::size_t n, Shift s, Coeff c, FaceMask pinned) {
  TermMap t;
  t.emplace(std::move(s), std::move(c));
  return AlgebraElement(n, std::move(t), pinned);
}

Coeff AlgebraElement::coefficient(const Shift& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Coeff{} : it->second;
}

Complex AlgebraElement::value_at(const GroupoidElement& g, double q) const {
  if (g.dim() != n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  for (std::size_t j = 0; j < n_; ++j) {
    if (is_pinned(j) && !g.w()[j].is_inf()) return 0.0;
  }
  auto it = terms_.find(g.shift());
  if (it == terms_.end()) return 0.0;
  return eval(it->second, g.w(), q);
}

long AlgebraElement::bandwidth() const {
  long b = 0;
  for (const auto& [s, c] : terms_) {
    for (long v : s.x) b = std::max(b, std::labs(v));
  }
  return b;
}

void AlgebraElement::check_compatible(const AlgebraElement& o) const {
  if (n_ != o.n_ || pinned_ != o.pinned_) {
    throw Error(ErrorCode::InvalidArgument, "elements live on different groupoids");
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  check_compatible(o);
  for (const auto& [s, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second.empty()) terms_.erase(it);
    }
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  return *this += Complex(-1.0) * o;
}

AlgebraElement operator*(Complex s, const AlgebraElement& a) {
  AlgebraElement::TermMap t;
  for (const auto& [sh, c] : a.terms_) t.emplace(sh, s * c);
  return AlgebraElement(a.n_, std::move(t), a.pinned_);
}

AlgebraElement operator*(const Coeff& s, const AlgebraElement& a) {
  AlgebraElement::TermMap t;
  for (const auto& [sh, c] : a.terms_) t.emplace(sh, s * c);
  return AlgebraElement(a.n_, std::move(t), a.pinned_);
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g) {
  if (f.dim() != g.dim() || f.pinned() != g.pinned()) {
    throw Error(ErrorCode::InvalidArgument, "convolution of elements on different groupoids");
  }
  AlgebraElement::TermMap out;
  for (const auto& [s2, c2] : g.terms()) {
    for (const auto& [s1, c1] : f.terms()) {
      Coeff prod = shift(c1, s2.x) * c2;
      if (prod.empty()) continue;
      auto [it, inserted] = out.try_emplace(s1 + s2, std::move(prod));
      if (!inserted) it->second += prod;
    }
  }
  return AlgebraElement(f.dim(), std::move(out), f.pinned());
}

AlgebraElement adjoint(const AlgebraElement& f) {
  AlgebraElement::TermMap out;
  for (const auto& [s, c] : f.terms()) {
    Shift inv = -s;
    Coeff coef = conj(shift(c, inv.x));
    auto [it, inserted] = out.try_emplace(std::move(inv), std::move(coef));
    if (!inserted) throw Error(ErrorCode::InvalidArgument, "duplicate shift in adjoint");
  }
  return AlgebraElement(f.dim(), std::move(out), f.pinned());
}

ZeroTest is_zero(const AlgebraElement& f) {
  ZeroTest result = ZeroTest::ProvablyZero;
  for (const auto& [s, c] : f.terms()) {
    const ZeroTest t = is_zero(c);
    if (t == ZeroTest::ProvablyNonzero) return t;
    if (t == ZeroTest::Unknown) result = ZeroTest::Unknown;
  }
  return result;
}

ZeroTest equal(const AlgebraElement& f, const AlgebraElement& g) { return is_zero(f - g); }

std::string serialize(const AlgebraElement& f) {
  std::string out = "AlgebraElement n=" + std::to_string(f.dim()) + " pinned={";
  bool first = true;
  for (std::size_t j = 0; j < f.dim(); ++j) {
    if (!f.is_pinned(j)) continue;
    if (!first) out += ",";
    out += std::to_string(j + 1);
    first = false;
  }
  out += "} terms=" + std::to_string(f.terms().size()) + "\n";
  for (const auto& [s, c] : f.terms()) out += to_string(s) + " : " + render(c) + "\n";
  return out;
}

namespace {

const long kWitnessValues[] = {0, 1, 2, 3, 5, 8};

/// Units with the slots in `inf_mask` infinite and the other slots drawn from
/// kWitnessValues, restricted to those where s is a valid shift.
std::vector<Unit> witness_units(std::size_t n, FaceMask inf_mask, const Shift& s) {
  std::vector<Unit> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Unit w(n);
    bool valid = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (inf_mask & face_bit(j)) {
        w[j] = kInf;
      } else {
        w[j] = kWitnessValues[idx[j]];
        valid = valid && w[j].value() + s.x[j] >= 0;
      }
    }
    if (valid) out.push_back(std::move(w));
    std::size_t pos = n;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (inf_mask & face_bit(pos)) continue;
      if (++idx[pos] < std::size(kWitnessValues)) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) return out;
  }
}

/// Searches for a nonzero value of c over witness units with `inf_mask` infinite.
bool find_nonzero(const Coeff& c, std::size_t n, FaceMask inf_mask, const Shift& s,
                  Certificate& cert) {
  for (double q : kProbeQs) {
    for (const auto& w : witness_units(n, inf_mask, s)) {
      const double v = std::abs(eval(c, w, q));
      if (v > kNonzeroThreshold) {
        cert.status = CertStatus::Refuted;
        cert.witness = GroupoidElement(s, w);
        cert.witness_value = v;
        return true;
      }
    }
  }
  return false;
}

Coeff restrict_mask(Coeff c, FaceMask mask, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    if (mask & face_bit(j)) c = restrict_inf(c, static_cast<int>(j));
  }
  return c;
}

}  // namespace

Certificate support_subset_ftilde(const AlgebraElement& f) {
  const std::size_t n = f.dim();
  Certificate cert;
  for (const auto& [s, c] : f.terms()) {
    for (FaceMask pattern = 1; pattern < (FaceMask{1} << n); ++pattern) {
      if ((pattern & f.pinned()) != f.pinned()) continue;
      bool violated = false;
      for (std::size_t i = 0; i < n && !violated; ++i) {
        if ((pattern & face_bit(i)) && !satisfies_infinity_condition(s, i)) violated = true;
      }
      if (!violated) continue;
      const Coeff r = restrict_mask(c, pattern, n);
      if (is_zero(r) == ZeroTest::ProvablyZero) continue;
      Certificate refuted;
      if (find_nonzero(r, n, pattern, s, refuted)) {
        refuted.detail = "nonzero coefficient outside Ftilde_n at shift " + to_string(s);
        return refuted;
      }
      cert.status = CertStatus::Unknown;
      cert.detail = "undecided restriction at shift " + to_string(s) + ": " + render(r);
    }
  }
  return cert;
}

Certificate sim_invariant(const AlgebraElement& f) {
  if (support_subset_ftilde(f).status != CertStatus::Certified) {
    throw Error(ErrorCode::DomainError, "sim_invariant requires support inside Ftilde_n");
  }
  const std::size_t n = f.dim();
  Certificate cert;
  for (const auto& [s, c] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      // First infinite slot is i: slots before it must be able to be finite.
      if (f.pinned() & (face_bit(i) - 1)) break;
      const Coeff r = f.is_pinned(i) ? c : restrict_inf(c, static_cast<int>(i));
      if (r.max_slot() <= static_cast<int>(i)) continue;

      // Witness search: w_i = inf, later slots from the probe set, compared
      // against the saturated unit.
      bool refuted = false;
      static const ExtNat kTail[] = {0, 1, 2, 5, kInf};
      const std::size_t tail = n - i - 1;
      std::size_t combos = 1;
      for (std::size_t t = 0; t < tail; ++t) combos *= std::size(kTail);
      const FaceMask head_inf = ((face_bit(n) - 1) & ~(face_bit(i) - 1));
      for (double q : kProbeQs) {
        for (const auto& base : witness_units(n, head_inf, s)) {
          for (std::size_t k = 0; k < combos && !refuted; ++k) {
            Unit w = base;
            std::size_t code = k;
            bool valid = true;
            for (std::size_t t = 0; t < tail; ++t) {
              const std::size_t j = i + 1 + t;
              const ExtNat v = kTail[code % std::size(kTail)];
              code /= std::size(kTail);
              if (f.is_pinned(j)) continue;
              w[j] = v;
              valid = valid && w[j].plus(s.x[j]).has_value();
            }
            if (!valid) continue;
            const Unit sat = canonicalize_unit(w);
            const Complex a = eval(c, w, q);
            const Complex b = eval(c, sat, q);
            if (std::abs(a - b) > kNonzeroThreshold) {
              cert.status = CertStatus::Refuted;
              cert.witness = GroupoidElement(s, w);
              cert.partner = GroupoidElement(s, sat);
              cert.witness_value = std::abs(a - b);
              cert.detail = "value changes across a ~-class at shift " + to_string(s);
              refuted = true;
            }
          }
          if (refuted) return cert;
        }
      }
      cert.status = CertStatus::Unknown;
      cert.detail = "restriction to slot " + std::to_string(i + 1) +
                    " still depends on later slots: " + render(r);
    }
  }
  return cert;
}

Certificate vanishes_on_boundary(const AlgebraElement& f) {
  const std::size_t n = f.dim();
  Certificate cert;
  for (const auto& [s, c] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      const Coeff r = f.is_pinned(i) ? c : restrict_inf(c, static_cast<int>(i));
      if (is_zero(r) == ZeroTest::ProvablyZero) continue;
      Certificate refuted;
      if (find_nonzero(r, n, face_bit(i) | f.pinned(), s, refuted)) {
        refuted.detail = "survives on face F_" + std::to_string(i + 1) + " at shift " + to_string(s);
        return refuted;
      }
      cert.status = CertStatus::Unknown;
      cert.detail = "undecided restriction to face F_" + std::to_string(i + 1);
    }
  }
  return cert;
}

AlgebraElement rho_face(const AlgebraElement& f, std::size_t slot) {
  if (slot >= f.dim()) throw Error(ErrorCode::InvalidArgument, "face index out of range");
  if (f.is_pinned(slot)) return f;
  AlgebraElement::TermMap out;
  for (const auto& [s, c] : f.terms()) {
    Coeff r = restrict_inf(c, static_cast<int>(slot));
    if (!r.empty()) out.emplace(s, std::move(r));
  }
  return AlgebraElement(f.dim(), std::move(out), f.pinned() | face_bit(slot));
}

BoundaryFamily rho_boundary(const AlgebraElement& f) {
  BoundaryFamily family;
  for (std::size_t i = 0; i < f.dim(); ++i) family.push_back(rho_face(f, i));
  return family;
}

AlgebraElement pullback_last_slot(const AlgebraElement& f) {
  const std::size_t last = f.dim() - 1;
  if (!f.is_pinned(last)) {
    throw Error(ErrorCode::DomainError, "pullback needs an element supported on the last face");
  }
  return AlgebraElement(f.dim(), f.terms(), f.pinned() & ~face_bit(last));
}

AlgebraElement pi_pullback_ni(const AlgebraElement& f, std::size_t slot) {
  const std::size_t last = f.dim() - 1;
  if (slot >= last) throw Error(ErrorCode::InvalidArgument, "pi_ni needs a slot before the last");
  if (f.pinned() != (face_bit(slot) | face_bit(last))) {
    throw Error(ErrorCode::DomainError, "pi_ni input must live on F_i n F_n");
  }
  return pullback_last_slot(f);
}

BoundaryFamily pi_pullback_n_boundary(const AlgebraElement& f) {
  if (f.pinned() != face_bit(f.dim() - 1)) {
    throw Error(ErrorCode::DomainError, "pi_{n,dF} input must live on F_n");
  }
  return rho_boundary(pullback_last_slot(f));
}

bool boundary_compatible(const BoundaryFamily& family) {
  const std::size_t n = family.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (family[i].dim() != n || family[i].pinned() != face_bit(i)) {
      throw Error(ErrorCode::InvalidArgument, "family entry " + std::to_string(i + 1) +
                                                  " is not supported on its face");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (equal(rho_face(family[j], i), rho_face(family[i], j)) != ZeroTest::ProvablyZero) {
        return false;
      }
    }
  }
  return true;
}

AlgebraElement transport_phi(const AlgebraElement& f) {
  const std::size_t last = f.dim() - 1;
  if (!f.is_pinned(last)) throw Error(ErrorCode::DomainError, "phi acts on F^n|_{F_n}");
  AlgebraElement::TermMap out;
  for (const auto& [s, c] : f.terms()) {
    Shift t = s;
    long corr = -s.z;
    for (std::size_t i = 0; i < last; ++i) corr -= s.x[i];
    t.x[last] += corr;
    out.emplace(std::move(t), c);
  }
  return AlgebraElement(f.dim(), std::move(out), f.pinned());
}

AlgebraElement embed_lower(const AlgebraElement& f) {
  const std::size_t n = f.dim() + 1;
  AlgebraElement::TermMap out;
  for (const auto& [s, c] : f.terms()) {
    Shift t = s;
    t.x.push_back(0);
    out.emplace(std::move(t), c);
  }
  return AlgebraElement(n, std::move(out), f.pinned() | face_bit(n - 1));
}

}  // namespace qsphere
