#include "qsphere/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qsphere {

const char* to_string(ZeroTest z) {
  switch (z) {
    case ZeroTest::ProvablyZero: return "ProvablyZero";
    case ZeroTest::ProvablyNonzero: return "ProvablyNonzero";
    case ZeroTest::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expression tree

struct Expr::Node {
  explicit Node(Kind k, Complex v = {}) : kind(k), c(v) {}

  Kind kind;
  Complex c{};
  int slot = 0;
  int exponent = 0;
  int offset = 0;
  std::vector<Expr> kids;
};

namespace {

void check_slot(int slot) {
  if (slot < 0) throw Error(ErrorCode::InvalidArgument, "negative slot index");
}

}  // namespace

Expr Expr::constant(Complex c) {
  return Expr(std::make_shared<const Node>(Node{Kind::Const, c}));
}

Expr Expr::qpow(int k) {
  Node n{Kind::QPow};
  n.exponent = k;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::pow(int slot, int exponent, int offset) {
  check_slot(slot);
  if (exponent < 1) throw Error(ErrorCode::InvalidArgument, "Pow exponent must be >= 1");
  Node n{Kind::Pow};
  n.slot = slot;
  n.exponent = exponent;
  n.offset = offset;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::sqrt(int slot, int offset) {
  check_slot(slot);
  Node n{Kind::Sqrt};
  n.slot = slot;
  n.offset = offset;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::ind(int slot, int min) {
  check_slot(slot);
  Node n{Kind::Ind};
  n.slot = slot;
  n.offset = min;
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  Node n{Kind::Sum};
  n.kids = std::move(terms);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::prod(std::vector<Expr> factors) {
  Node n{Kind::Prod};
  n.kids = std::move(factors);
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
Complex Expr::value() const { return node_->c; }
int Expr::slot() const { return node_->slot; }
int Expr::exponent() const { return node_->exponent; }
int Expr::offset() const { return node_->offset; }
const std::vector<Expr>& Expr::children() const { return node_->kids; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::sum({a, Expr::prod({Expr::constant(-1.0), b})});
}
Expr operator*(const Expr& a, const Expr& b) { return Expr::prod({a, b}); }

namespace {

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(Complex c) {
  if (c.imag() == 0.0) return fmt_number(c.real());
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
  return buf;
}

std::string slot_name(int slot) { return "w" + std::to_string(slot + 1); }

std::string with_offset(int slot, int offset) {
  std::string s = slot_name(slot);
  if (offset > 0) s += "+" + std::to_string(offset);
  if (offset < 0) s += std::to_string(offset);
  return s;
}

}  // namespace

std::string render(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return fmt_complex(e.value());
    case Expr::Kind::QPow: return "q^{" + std::to_string(e.exponent()) + "}";
    case Expr::Kind::Pow:
      return "Pow(" + with_offset(e.slot(), e.offset()) + ")^" + std::to_string(e.exponent());
    case Expr::Kind::Sqrt: return "S(" + with_offset(e.slot(), e.offset()) + ")";
    case Expr::Kind::Ind:
      return "[" + slot_name(e.slot()) + ">=" + std::to_string(e.offset()) + "]";
    case Expr::Kind::Sum:
    case Expr::Kind::Prod: {
      const char* sep = e.kind() == Expr::Kind::Sum ? " + " : " * ";
      std::string out = "(";
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += sep;
        out += render(e.children()[i]);
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

void check_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidArgument, "q must lie in (0,1)");
}

const ExtNat& unit_slot(std::span<const ExtNat> w, int slot) {
  if (slot < 0 || static_cast<std::size_t>(slot) >= w.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "slot " + std::to_string(slot + 1) + " out of range for unit of dimension " +
                    std::to_string(w.size()));
  }
  return w[static_cast<std::size_t>(slot)];
}

double pow_atom(const ExtNat& v, int exponent, int offset, double q) {
  if (v.is_inf()) return 0.0;
  return std::pow(q, static_cast<double>(exponent) * static_cast<double>(v.value() + offset));
}

double sqrt_atom(const ExtNat& v, int offset, double q) {
  if (v.is_inf()) return 1.0;
  const long arg = v.value() + offset;
  if (arg < 0) return 0.0;
  return std::sqrt(1.0 - std::pow(q, 2.0 * static_cast<double>(arg)));
}

double ind_atom(const ExtNat& v, int min) {
  if (v.is_inf()) return 1.0;
  return v.value() >= min ? 1.0 : 0.0;
}

long shift_at(std::span<const long> x, int slot) {
  if (static_cast<std::size_t>(slot) >= x.size()) {
    throw Error(ErrorCode::InvalidArgument, "shift vector too short for slot " + std::to_string(slot + 1));
  }
  return x[static_cast<std::size_t>(slot)];
}

}  // namespace

Complex eval(const Expr& e, std::span<const ExtNat> w, double q) {
  check_q(q);
  switch (e.kind()) {
    case Expr::Kind::Const: return e.value();
    case Expr::Kind::QPow: return std::pow(q, e.exponent());
    case Expr::Kind::Pow: return pow_atom(unit_slot(w, e.slot()), e.exponent(), e.offset(), q);
    case Expr::Kind::Sqrt: return sqrt_atom(unit_slot(w, e.slot()), e.offset(), q);
    case Expr::Kind::Ind: return ind_atom(unit_slot(w, e.slot()), e.offset());
    case Expr::Kind::Sum: {
      Complex s = 0.0;
      for (const auto& k : e.children()) s += eval(k, w, q);
      return s;
    }
    case Expr::Kind::Prod: {
      Complex p = 1.0;
      for (const auto& k : e.children()) p *= eval(k, w, q);
      return p;
    }
  }
  return 0.0;
}

Expr shift(const Expr& e, std::span<const long> x) {
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::QPow: return e;
    case Expr::Kind::Pow:
      return Expr::pow(e.slot(), e.exponent(), e.offset() + static_cast<int>(shift_at(x, e.slot())));
    case Expr::Kind::Sqrt: {
      const int o = e.offset() + static_cast<int>(shift_at(x, e.slot()));
      if (o < 0) return Expr::sqrt(e.slot(), o) * Expr::ind(e.slot(), -o);
      return Expr::sqrt(e.slot(), o);
    }
    case Expr::Kind::Ind:
      return Expr::ind(e.slot(), e.offset() - static_cast<int>(shift_at(x, e.slot())));
    case Expr::Kind::Sum:
    case Expr::Kind::Prod: {
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      for (const auto& k : e.children()) kids.push_back(shift(k, x));
      return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(kids)) : Expr::prod(std::move(kids));
    }
  }
  return e;
}

Expr restrict_inf(const Expr& e, int slot) {
  switch (e.kind()) {
    case Expr::Kind::Const:
    case Expr::Kind::QPow: return e;
    case Expr::Kind::Pow: return e.slot() == slot ? Expr::constant(0.0) : e;
    case Expr::Kind::Sqrt:
    case Expr::Kind::Ind: return e.slot() == slot ? Expr::constant(1.0) : e;
    case Expr::Kind::Sum:
    case Expr::Kind::Prod: {
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      for (const auto& k : e.children()) kids.push_back(restrict_inf(k, slot));
      return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(kids)) : Expr::prod(std::move(kids));
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Normal form

bool Monomial::references(int slot) const {
  auto has = [slot](const auto& v) {
    return std::any_of(v.begin(), v.end(), [slot](const auto& p) { return p.first == slot; });
  };
  return has(pow) || has(sqrt) || has(ind);
}

int Monomial::max_slot() const {
  int m = -1;
  for (const auto& p : pow) m = std::max(m, p.first);
  for (const auto& p : sqrt) m = std::max(m, p.first);
  for (const auto& p : ind) m = std::max(m, p.first);
  return m;
}

namespace {

using SlotPairs = std::vector<std::pair<int, int>>;

/// Sorts by slot and merges equal slots with `merge`.
template <typename Merge>
void merge_by_slot(SlotPairs& v, Merge merge) {
  std::sort(v.begin(), v.end());
  SlotPairs out;
  for (const auto& p : v) {
    if (!out.empty() && out.back().first == p.first) {
      out.back().second = merge(out.back().second, p.second);
    } else {
      out.push_back(p);
    }
  }
  v = std::move(out);
}

void canonicalize_monomial(Monomial& m) {
  merge_by_slot(m.pow, [](int a, int b) { return a + b; });
  std::sort(m.sqrt.begin(), m.sqrt.end());
  merge_by_slot(m.ind, [](int a, int b) { return std::max(a, b); });
  // Sqrt(j,o) already vanishes for w_j <= -o, so Ind(j,k) with k <= 1-o adds nothing.
  std::erase_if(m.ind, [&](const auto& p) {
    if (p.second <= 0) return true;
    return std::any_of(m.sqrt.begin(), m.sqrt.end(), [&](const auto& s) {
      return s.first == p.first && p.second <= 1 - s.second;
    });
  });
}

void multiply_into(Coeff& out, const Monomial& a, const Monomial& b, Complex c) {
  Monomial base;
  base.q_exp = a.q_exp + b.q_exp;
  base.pow = a.pow;
  base.pow.insert(base.pow.end(), b.pow.begin(), b.pow.end());
  base.ind = a.ind;
  base.ind.insert(base.ind.end(), b.ind.begin(), b.ind.end());

  SlotPairs squares;
  std::size_t i = 0, j = 0;
  while (i < a.sqrt.size() || j < b.sqrt.size()) {
    if (j == b.sqrt.size() || (i < a.sqrt.size() && a.sqrt[i] < b.sqrt[j])) {
      base.sqrt.push_back(a.sqrt[i++]);
    } else if (i == a.sqrt.size() || b.sqrt[j] < a.sqrt[i]) {
      base.sqrt.push_back(b.sqrt[j++]);
    } else {
      squares.push_back(a.sqrt[i]);
      ++i;
      ++j;
    }
  }

  // Sqrt(j,o)^2 = Ind(j,-o) * (1 - q^{2o} q^{2 w_j})
  std::vector<std::pair<Monomial, Complex>> expansion{{std::move(base), c}};
  for (const auto& [slot, o] : squares) {
    std::vector<std::pair<Monomial, Complex>> next;
    next.reserve(expansion.size() * 2);
    for (auto& [m, coef] : expansion) {
      if (o < 0) m.ind.emplace_back(slot, -o);
      Monomial lowered = m;
      lowered.q_exp += 2 * o;
      lowered.pow.emplace_back(slot, 2);
      next.emplace_back(std::move(m), coef);
      next.emplace_back(std::move(lowered), -coef);
    }
    expansion = std::move(next);
  }
  for (auto& [m, coef] : expansion) out.add_monomial(std::move(m), coef);
}

}  // namespace

void Coeff::add_monomial(Monomial m, Complex c) {
  canonicalize_monomial(m);
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kDropTolerance) terms_.erase(it);
}

Coeff Coeff::constant(Complex c) {
  Coeff r;
  r.add_monomial(Monomial{}, c);
  return r;
}

Coeff Coeff::qpow(int k) {
  Coeff r;
  Monomial m;
  m.q_exp = k;
  r.add_monomial(std::move(m), 1.0);
  return r;
}

Coeff Coeff::pow(int slot, int exponent, int offset) {
  check_slot(slot);
  if (exponent < 1) throw Error(ErrorCode::InvalidArgument, "Pow exponent must be >= 1");
  Coeff r;
  Monomial m;
  m.q_exp = exponent * offset;
  m.pow.emplace_back(slot, exponent);
  r.add_monomial(std::move(m), 1.0);
  return r;
}

Coeff Coeff::sqrt(int slot, int offset) {
  check_slot(slot);
  Coeff r;
  Monomial m;
  m.sqrt.emplace_back(slot, offset);
  r.add_monomial(std::move(m), 1.0);
  return r;
}

Coeff Coeff::ind(int slot, int min) {
  check_slot(slot);
  Coeff r;
  Monomial m;
  m.ind.emplace_back(slot, min);
  r.add_monomial(std::move(m), 1.0);
  return r;
}

bool Coeff::references(int slot) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [slot](const auto& t) { return t.first.references(slot); });
}

int Coeff::max_slot() const {
  int m = -1;
  for (const auto& [mono, c] : terms_) m = std::max(m, mono.max_slot());
  return m;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  for (const auto& [m, c] : o.terms_) add_monomial(m, c);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  for (const auto& [m, c] : o.terms_) add_monomial(m, -c);
  return *this;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) multiply_into(out, ma, mb, ca * cb);
  }
  return out;
}

Coeff operator*(Complex s, const Coeff& a) {
  Coeff out;
  for (const auto& [m, c] : a.terms_) out.add_monomial(m, s * c);
  return out;
}

Coeff normalize(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Const: return Coeff::constant(e.value());
    case Expr::Kind::QPow: return Coeff::qpow(e.exponent());
    case Expr::Kind::Pow: return Coeff::pow(e.slot(), e.exponent(), e.offset());
    case Expr::Kind::Sqrt: return Coeff::sqrt(e.slot(), e.offset());
    case Expr::Kind::Ind: return Coeff::ind(e.slot(), e.offset());
    case Expr::Kind::Sum: {
      Coeff s;
      for (const auto& k : e.children()) s += normalize(k);
      return s;
    }
    case Expr::Kind::Prod: {
      Coeff p = Coeff::one();
      for (const auto& k : e.children()) p = p * normalize(k);
      return p;
    }
  }
  return {};
}

Complex eval(const Coeff& c, std::span<const ExtNat> w, double q) {
  check_q(q);
  Complex total = 0.0;
  for (const auto& [m, coef] : c.terms()) {
    double v = std::pow(q, m.q_exp);
    for (const auto& [slot, e] : m.pow) v *= pow_atom(unit_slot(w, slot), e, 0, q);
    for (const auto& [slot, o] : m.sqrt) v *= sqrt_atom(unit_slot(w, slot), o, q);
    for (const auto& [slot, t] : m.ind) v *= ind_atom(unit_slot(w, slot), t);
    total += coef * v;
  }
  return total;
}

Coeff shift(const Coeff& c, std::span<const long> x) {
  Coeff out;
  for (const auto& [m, coef] : c.terms()) {
    Monomial s = m;
    for (const auto& [slot, e] : s.pow) s.q_exp += e * static_cast<int>(shift_at(x, slot));
    for (auto& [slot, o] : s.sqrt) o += static_cast<int>(shift_at(x, slot));
    for (auto& [slot, t] : s.ind) t -= static_cast<int>(shift_at(x, slot));
    out.add_monomial(std::move(s), coef);
  }
  return out;
}

Coeff restrict_inf(const Coeff& c, int slot) {
  Coeff out;
  for (const auto& [m, coef] : c.terms()) {
    if (std::any_of(m.pow.begin(), m.pow.end(), [slot](const auto& p) { return p.first == slot; })) {
      continue;
    }
    Monomial r = m;
    std::erase_if(r.sqrt, [slot](const auto& p) { return p.first == slot; });
    std::erase_if(r.ind, [slot](const auto& p) { return p.first == slot; });
    out.add_monomial(std::move(r), coef);
  }
  return out;
}

Coeff conj(const Coeff& c) {
  Coeff out;
  for (const auto& [m, coef] : c.terms()) out.add_monomial(m, std::conj(coef));
  return out;
}

std::vector<Unit> probe_units(std::size_t k) {
  static const ExtNat kValues[] = {0, 1, 2, 5, kInf};
  std::vector<Unit> out;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    Unit w(k);
    for (std::size_t i = 0; i < k; ++i) w[i] = kValues[idx[i]];
    out.push_back(std::move(w));
    std::size_t pos = k;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < std::size(kValues)) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) return out;
  }
}

ZeroTest is_zero(const Coeff& c) {
  if (c.empty()) return ZeroTest::ProvablyZero;
  const auto units = probe_units(static_cast<std::size_t>(c.max_slot() + 1));
  for (double q : kProbeQs) {
    for (const auto& w : units) {
      if (std::abs(eval(c, w, q)) > kNonzeroThreshold) return ZeroTest::ProvablyNonzero;
    }
  }
  return ZeroTest::Unknown;
}

ZeroTest equal(const Coeff& a, const Coeff& b) { return is_zero(a - b); }

std::string render(const Monomial& m) {
  std::vector<std::string> factors;
  if (m.q_exp != 0) factors.push_back("q^{" + std::to_string(m.q_exp) + "}");
  for (const auto& [slot, e] : m.pow) {
    factors.push_back("q^{" + (e == 1 ? std::string() : std::to_string(e)) + slot_name(slot) + "}");
  }
  for (const auto& [slot, o] : m.sqrt) factors.push_back("S(" + with_offset(slot, o) + ")");
  for (const auto& [slot, t] : m.ind) {
    factors.push_back("[" + slot_name(slot) + ">=" + std::to_string(t) + "]");
  }
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += "*";
    out += factors[i];
  }
  return out;
}

std::string render(const Coeff& c) {
  if (c.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, coef] : c.terms()) {
    const std::string body = render(m);
    std::string sign = first ? "" : " + ";
    Complex k = coef;
    if (coef.imag() == 0.0 && coef.real() < 0.0) {
      sign = first ? "-" : " - ";
      k = -coef;
    }
    std::string term;
    if (body.empty()) {
      term = fmt_complex(k);
    } else if (k == Complex(1.0)) {
      term = body;
    } else {
      term = fmt_complex(k) + "*" + body;
    }
    out += sign + term;
    first = false;
  }
  return out;
}

}  // namespace qsphere
