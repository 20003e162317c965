#include "qsphere/groupoid.hpp"

#include <algorithm>
#include <sstream>

namespace qsphere {

std::string ExtNat::str() const {
  return is_inf() ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const ExtNat& v) { return os << v.str(); }

std::string to_string(const Unit& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ",";
    out += w[i].str();
  }
  return out + ")";
}

Shift Shift::operator+(const Shift& o) const {
  if (o.x.size() != x.size()) {
    throw Error(ErrorCode::InvalidArgument, "shift dimension mismatch");
  }
  Shift r{z + o.z, x};
  for (std::size_t i = 0; i < x.size(); ++i) r.x[i] += o.x[i];
  return r;
}

Shift Shift::operator-() const {
  Shift r{-z, x};
  for (auto& v : r.x) v = -v;
  return r;
}

bool Shift::is_zero() const {
  if (z != 0) return false;
  for (long v : x) {
    if (v != 0) return false;
  }
  return true;
}

std::string to_string(const Shift& s) {
  std::string out = "(" + std::to_string(s.z) + ";";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.x[i]);
  }
  return out + ")";
}

GroupoidElement::GroupoidElement(long z, std::vector<long> x, Unit w)
    : GroupoidElement(Shift{z, std::move(x)}, std::move(w)) {}

GroupoidElement::GroupoidElement(Shift s, Unit w) : shift_(std::move(s)), w_(std::move(w)) {
  if (shift_.x.size() != w_.size()) {
    throw Error(ErrorCode::InvalidArgument, "shift and unit have different dimensions");
  }
  range_.reserve(w_.size());
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!w_[i].is_inf() && w_[i].value() < 0) {
      throw Error(ErrorCode::InvalidUnit, "negative unit coordinate in " + to_string(w_));
    }
    auto r = w_[i].plus(shift_.x[i]);
    if (!r) {
      throw Error(ErrorCode::InvalidUnit,
                  "range leaves the unit space: w=" + to_string(w_) + " x=" + to_string(shift_));
    }
    range_.push_back(*r);
  }
}

GroupoidElement GroupoidElement::unit_at(const Unit& w) {
  return GroupoidElement(Shift{0, std::vector<long>(w.size(), 0)}, w);
}

std::string GroupoidElement::str() const {
  std::ostringstream os;
  os << "(" << shift_.z << ",(";
  for (std::size_t i = 0; i < shift_.x.size(); ++i) {
    if (i) os << ",";
    os << shift_.x[i];
  }
  os << ")," << to_string(w_) << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupoidElement& g) { return os << g.str(); }

GroupoidElement make_element(long z, std::vector<long> x, Unit w) {
  return GroupoidElement(z, std::move(x), std::move(w));
}

GroupoidElement compose(const GroupoidElement& g, const GroupoidElement& h) {
  if (g.dim() != h.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  if (g.source() != h.range()) {
    throw Error(ErrorCode::NotComposable,
                "source " + to_string(g.source()) + " != range " + to_string(h.range()));
  }
  return GroupoidElement(g.shift() + h.shift(), h.w());
}

GroupoidElement inverse(const GroupoidElement& g) { return GroupoidElement(-g.shift(), g.range()); }

bool in_face(const Unit& w, std::size_t slot) {
  if (slot >= w.size()) throw Error(ErrorCode::InvalidArgument, "face index out of range");
  return w[slot].is_inf();
}

bool in_boundary(const Unit& w) {
  for (const auto& v : w) {
    if (v.is_inf()) return true;
  }
  return false;
}

bool satisfies_infinity_condition(const Shift& s, std::size_t slot) {
  long expected = -s.z;
  for (std::size_t l = 0; l < slot; ++l) expected -= s.x[l];
  if (s.x[slot] != expected) return false;
  for (std::size_t l = slot + 1; l < s.x.size(); ++l) {
    if (s.x[l] != 0) return false;
  }
  return true;
}

bool in_ftilde(const GroupoidElement& g) {
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (g.w()[i].is_inf() && !satisfies_infinity_condition(g.shift(), i)) return false;
  }
  return true;
}

bool in_ftilde_prime(const GroupoidElement& g) {
  return g.dim() > 0 && g.w().back().is_inf() && in_ftilde(g);
}

bool in_ftilde_doubleprime(const GroupoidElement& g) {
  return in_boundary(g.w()) && in_ftilde(g);
}

bool in_ftilde_lower_embedded(const GroupoidElement& g) {
  const std::size_t n = g.dim();
  if (n == 0 || !g.w().back().is_inf() || g.x().back() != 0) return false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (g.w()[i].is_inf() && !satisfies_infinity_condition(g.shift(), i)) return false;
  }
  return true;
}

Unit canonicalize_unit(const Unit& w) {
  Unit out = w;
  bool seen = false;
  for (auto& v : out) {
    if (seen) v = kInf;
    if (v.is_inf()) seen = true;
  }
  return out;
}

GroupoidElement canonicalize(const GroupoidElement& g) {
  if (!in_ftilde(g)) {
    throw Error(ErrorCode::NotInSubgroupoid, g.str() + " is not in Ftilde_n");
  }
  return GroupoidElement(g.shift(), canonicalize_unit(g.w()));
}

bool sim_equivalent(const GroupoidElement& g, const GroupoidElement& h) {
  return canonicalize(g) == canonicalize(h);
}

CanonicalClass compose_classes(const GroupoidElement& a, const GroupoidElement& b) {
  if (!in_ftilde(a) || !in_ftilde(b)) {
    throw Error(ErrorCode::NotInSubgroupoid, "class representatives must lie in Ftilde_n");
  }
  if (canonicalize_unit(a.source()) != canonicalize_unit(b.range())) {
    throw Error(ErrorCode::NotComposable, "unit classes differ: " + to_string(a.source()) +
                                              " vs " + to_string(b.range()));
  }
  GroupoidElement adjusted(a.shift(), b.range());
  return CanonicalClass(compose(adjusted, b));
}

CanonicalClass compose_classes(const CanonicalClass& a, const CanonicalClass& b) {
  return compose_classes(a.rep(), b.rep());
}

CanonicalClass inverse_class(const CanonicalClass& a) { return CanonicalClass(inverse(a.rep())); }

GroupoidElement pi_n_boundary(const GroupoidElement& g) {
  if (!in_boundary(g.w())) {
    throw Error(ErrorCode::DomainError, g.str() + " does not have a boundary unit");
  }
  Unit w = g.w();
  w.back() = kInf;
  return GroupoidElement(g.shift(), std::move(w));
}

GroupoidElement pi_ni(const GroupoidElement& g, std::size_t slot) {
  if (!in_face(g.w(), slot)) {
    throw Error(ErrorCode::DomainError, g.str() + " is not over the face F_" + std::to_string(slot + 1));
  }
  return pi_n_boundary(g);
}

namespace {

long phi_correction(const GroupoidElement& g) {
  if (g.dim() == 0 || !g.w().back().is_inf()) {
    throw Error(ErrorCode::DomainError, g.str() + " is not over the face F_n");
  }
  long c = -g.z();
  for (std::size_t i = 0; i + 1 < g.dim(); ++i) c -= g.x()[i];
  return c;
}

}  // namespace

GroupoidElement phi_star(const GroupoidElement& g) {
  Shift s = g.shift();
  s.x.back() += phi_correction(g);
  return GroupoidElement(std::move(s), g.w());
}

GroupoidElement phi_star_inv(const GroupoidElement& g) {
  Shift s = g.shift();
  s.x.back() -= phi_correction(g);
  return GroupoidElement(std::move(s), g.w());
}

GroupoidElement embed_lower(const GroupoidElement& g) {
  Shift s = g.shift();
  s.x.push_back(0);
  Unit w = g.w();
  w.push_back(kInf);
  return GroupoidElement(std::move(s), std::move(w));
}

std::vector<Unit> enumerate_units(std::size_t n, long N) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "window cutoff must be >= 0");
  std::vector<ExtNat> values;
  for (long k = 0; k <= N; ++k) values.emplace_back(k);
  values.push_back(kInf);

  std::vector<Unit> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Unit w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = values[idx[i]];
    out.push_back(std::move(w));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < values.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::vector<GroupoidElement> enumerate_window(std::size_t n, const WindowBounds& b) {
  if (b.z_max < 0 || b.x_max < 0 || b.N < 0) {
    throw Error(ErrorCode::InvalidArgument, "window bounds must be >= 0");
  }
  const auto units = enumerate_units(n, b.N);
  std::vector<GroupoidElement> out;
  std::vector<long> x(n, -b.x_max);
  for (long z = -b.z_max; z <= b.z_max; ++z) {
    std::fill(x.begin(), x.end(), -b.x_max);
    while (true) {
      for (const auto& w : units) {
        bool valid = true;
        for (std::size_t i = 0; i < n && valid; ++i) valid = w[i].plus(x[i]).has_value();
        if (valid) out.emplace_back(z, x, w);
      }
      std::size_t pos = n;
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++x[pos] <= b.x_max) {
          done = false;
          break;
        }
        x[pos] = -b.x_max;
      }
      if (done) break;
    }
  }
  return out;
}

}  // namespace qsphere
