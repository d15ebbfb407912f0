#include "rado/scalar.hpp"

#include <sstream>

#include "rado/error.hpp"

namespace rado {

namespace {

mpz_class mod_reduce(const mpz_class& v, const mpz_class& n) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  return r;
}

void require_same_ring(const Scalar& a, const Scalar& b) {
  if (a.ring() != b.ring())
    fail(Err::DimensionMismatch,
         "mixed rings " + a.ring().to_string() + " and " + b.ring().to_string());
}

// Recursive sign used to pick the canonical associate over Z-based towers:
// sign of the leading coefficient, down to an integer.
int scalar_sign(const Scalar& a) {
  if (a.is_zero()) return 0;
  switch (a.ring().kind()) {
    case RingKind::Integers:
      return sgn(a.mpz());
    case RingKind::Rationals:
      return sgn(a.mpq());
    case RingKind::Poly:
      return scalar_sign(a.coeffs().back());
    default:
      return 1;
  }
}

// Unit that normalises `a` as a gcd representative: over fields the inverse
// of a (gcd -> 1), over Z the sign, over polynomials the normaliser of the
// leading coefficient (monic over field-based towers).
Scalar normalizing_unit(const Scalar& a) {
  const Ring& r = a.ring();
  if (a.is_zero()) return Scalar::one(r);
  switch (r.kind()) {
    case RingKind::Integers:
      return Scalar::from_int(r, scalar_sign(a) < 0 ? -1 : 1);
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return a.inverse();
    case RingKind::ModRing:
      if (r.is_field()) return a.inverse();
      fail(Err::NotADomain, "gcd normalisation over composite mod ring");
    case RingKind::Poly: {
      Scalar u = normalizing_unit(a.coeffs().back());
      return Scalar::poly(r, {u});
    }
    default:
      fail(Err::UnsupportedRing, "gcd normalisation over " + r.to_string());
  }
}

}  // namespace

Scalar::Scalar() : ring_(Ring::integers()), value_(mpz_class(0)) {}

Scalar Scalar::zero(const Ring& r) {
  switch (r.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return Scalar(r, mpz_class(0));
    case RingKind::Rationals:
      return Scalar(r, mpq_class(0));
    case RingKind::Poly:
      return Scalar(r, std::vector<Scalar>{});
    case RingKind::FracField:
      return Scalar(r, std::make_shared<const Frac>(
                           Frac{zero(r.base()), one(r.base())}));
    case RingKind::ProductMod:
      return Scalar(r, std::vector<mpz_class>(r.groups().size(), 0));
  }
  fail(Err::Internal, "zero: bad ring");
}

Scalar Scalar::one(const Ring& r) { return from_int(r, 1); }

Scalar Scalar::from_int(const Ring& r, long v) { return from_mpz(r, mpz_class(v)); }

Scalar Scalar::from_mpz(const Ring& r, const mpz_class& v) {
  switch (r.kind()) {
    case RingKind::Integers:
      return Scalar(r, v);
    case RingKind::Rationals:
      return Scalar(r, mpq_class(v));
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return Scalar(r, mod_reduce(v, r.modulus()));
    case RingKind::Poly: {
      Scalar c = from_mpz(r.base(), v);
      std::vector<Scalar> coeffs;
      if (!c.is_zero()) coeffs.push_back(std::move(c));
      return Scalar(r, std::move(coeffs));
    }
    case RingKind::FracField:
      return Scalar(r, std::make_shared<const Frac>(
                           Frac{from_mpz(r.base(), v), one(r.base())}));
    case RingKind::ProductMod:
      return Scalar(r, std::vector<mpz_class>(r.groups().size(), mod_reduce(v, r.modulus())));
  }
  fail(Err::Internal, "from_mpz: bad ring");
}

Scalar Scalar::rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return Scalar(Ring::rationals(), std::move(c));
}

Scalar Scalar::poly(const Ring& r, std::vector<Scalar> coeffs) {
  if (r.kind() != RingKind::Poly) fail(Err::MalformedInput, "poly scalar needs a poly ring");
  Ring b = r.base();
  for (const auto& c : coeffs)
    if (c.ring() != b) fail(Err::DimensionMismatch, "coefficient ring mismatch");
  Scalar s(r, std::move(coeffs));
  s.normalize();
  return s;
}

Scalar Scalar::fraction(const Ring& r, Scalar num, Scalar den) {
  if (r.kind() != RingKind::FracField) fail(Err::MalformedInput, "fraction needs a FracField ring");
  if (num.ring() != r.base() || den.ring() != r.base())
    fail(Err::DimensionMismatch, "fraction parts must live in the base polynomial ring");
  if (den.is_zero()) fail(Err::MalformedInput, "zero denominator");
  Scalar s(r, std::make_shared<const Frac>(Frac{std::move(num), std::move(den)}));
  s.normalize();
  return s;
}

Scalar Scalar::product(const Ring& r, std::vector<mpz_class> values) {
  if (r.kind() != RingKind::ProductMod) fail(Err::MalformedInput, "product scalar needs a product ring");
  if (values.size() != r.groups().size())
    fail(Err::DimensionMismatch, "product scalar needs one value per group");
  for (auto& v : values) v = mod_reduce(v, r.modulus());
  return Scalar(r, std::move(values));
}

void Scalar::normalize() {
  switch (ring_.kind()) {
    case RingKind::Poly: {
      auto& c = std::get<std::vector<Scalar>>(value_);
      while (!c.empty() && c.back().is_zero()) c.pop_back();
      return;
    }
    case RingKind::FracField: {
      auto fr = std::get<std::shared_ptr<const Frac>>(value_);
      Scalar n = fr->num, d = fr->den;
      if (n.is_zero()) {
        value_ = std::make_shared<const Frac>(Frac{n, one(d.ring())});
        return;
      }
      Scalar g = scalar_gcd(n, d);
      if (!g.is_one()) {
        n = *div_exact(n, g);
        d = *div_exact(d, g);
      }
      Scalar u = normalizing_unit(d);
      if (!u.is_one()) {
        n = n * u;
        d = d * u;
      }
      value_ = std::make_shared<const Frac>(Frac{std::move(n), std::move(d)});
      return;
    }
    default:
      return;
  }
}

bool Scalar::is_zero() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return mpz() == 0;
    case RingKind::Rationals:
      return mpq() == 0;
    case RingKind::Poly:
      return coeffs().empty();
    case RingKind::FracField:
      return num().is_zero();
    case RingKind::ProductMod:
      for (const auto& v : values())
        if (v != 0) return false;
      return true;
  }
  return false;
}

bool Scalar::is_one() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return mpz() == 1;
    case RingKind::Rationals:
      return mpq() == 1;
    case RingKind::Poly:
      return coeffs().size() == 1 && coeffs()[0].is_one();
    case RingKind::FracField:
      return num() == den();
    case RingKind::ProductMod:
      for (const auto& v : values())
        if (v != 1) return false;
      return true;
  }
  return false;
}

bool Scalar::operator==(const Scalar& o) const {
  if (ring_ != o.ring_) return false;
  switch (ring_.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return mpz() == o.mpz();
    case RingKind::Rationals:
      return mpq() == o.mpq();
    case RingKind::Poly: {
      const auto& a = coeffs();
      const auto& b = o.coeffs();
      if (a.size() != b.size()) return false;
      for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
      return true;
    }
    case RingKind::FracField:
      // Canonical forms make representation equality the same as value
      // equality; cross-multiplication kept as the defining check.
      return num() * o.den() == o.num() * den();
    case RingKind::ProductMod:
      return values() == o.values();
  }
  return false;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::Integers:
      return Scalar(r, mpz_class(a.mpz() + b.mpz()));
    case RingKind::Rationals:
      return Scalar(r, mpq_class(a.mpq() + b.mpq()));
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return Scalar(r, mod_reduce(a.mpz() + b.mpz(), r.modulus()));
    case RingKind::Poly: {
      const auto& x = a.coeffs();
      const auto& y = b.coeffs();
      std::vector<Scalar> out(std::max(x.size(), y.size()), Scalar::zero(r.base()));
      for (size_t i = 0; i < out.size(); ++i) {
        if (i < x.size()) out[i] += x[i];
        if (i < y.size()) out[i] += y[i];
      }
      return Scalar::poly(r, std::move(out));
    }
    case RingKind::FracField:
      return Scalar::fraction(r, a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
    case RingKind::ProductMod: {
      std::vector<mpz_class> out(a.values());
      for (size_t i = 0; i < out.size(); ++i) out[i] = mod_reduce(out[i] + b.values()[i], r.modulus());
      return Scalar(r, std::move(out));
    }
  }
  fail(Err::Internal, "add: bad ring");
}

Scalar Scalar::operator-() const {
  const Ring& r = ring_;
  switch (r.kind()) {
    case RingKind::Integers:
      return Scalar(r, mpz_class(-mpz()));
    case RingKind::Rationals:
      return Scalar(r, mpq_class(-mpq()));
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return Scalar(r, mod_reduce(-mpz(), r.modulus()));
    case RingKind::Poly: {
      std::vector<Scalar> out;
      out.reserve(coeffs().size());
      for (const auto& c : coeffs()) out.push_back(-c);
      return Scalar(r, std::move(out));
    }
    case RingKind::FracField:
      return Scalar(r, std::make_shared<const Frac>(Frac{-num(), den()}));
    case RingKind::ProductMod: {
      std::vector<mpz_class> out(values());
      for (auto& v : out) v = mod_reduce(-v, r.modulus());
      return Scalar(r, std::move(out));
    }
  }
  fail(Err::Internal, "neg: bad ring");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  const Ring& r = a.ring();
  switch (r.kind()) {
    case RingKind::Integers:
      return Scalar(r, mpz_class(a.mpz() * b.mpz()));
    case RingKind::Rationals:
      return Scalar(r, mpq_class(a.mpq() * b.mpq()));
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return Scalar(r, mod_reduce(a.mpz() * b.mpz(), r.modulus()));
    case RingKind::Poly: {
      const auto& x = a.coeffs();
      const auto& y = b.coeffs();
      if (x.empty() || y.empty()) return Scalar::zero(r);
      std::vector<Scalar> out(x.size() + y.size() - 1, Scalar::zero(r.base()));
      for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
      return Scalar::poly(r, std::move(out));
    }
    case RingKind::FracField:
      return Scalar::fraction(r, a.num() * b.num(), a.den() * b.den());
    case RingKind::ProductMod: {
      std::vector<mpz_class> out(a.values());
      for (size_t i = 0; i < out.size(); ++i) out[i] = mod_reduce(out[i] * b.values()[i], r.modulus());
      return Scalar(r, std::move(out));
    }
  }
  fail(Err::Internal, "mul: bad ring");
}

Scalar Scalar::inverse() const {
  const Ring& r = ring_;
  if (!r.is_field()) fail(Err::NonFieldDescriptor, r.to_string() + " is not a field");
  if (is_zero()) fail(Err::MalformedInput, "inverse of zero");
  switch (r.kind()) {
    case RingKind::Rationals:
      return Scalar(r, mpq_class(1 / mpq()));
    case RingKind::PrimeField:
    case RingKind::ModRing: {
      mpz_class inv;
      if (mpz_invert(inv.get_mpz_t(), mpz().get_mpz_t(), r.modulus().get_mpz_t()) == 0)
        fail(Err::Internal, "non-invertible element in prime field");
      return Scalar(r, std::move(inv));
    }
    case RingKind::FracField:
      return fraction(r, den(), num());
    default:
      fail(Err::NonFieldDescriptor, r.to_string() + " is not a field");
  }
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

std::optional<Scalar> Scalar::div_exact(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  const Ring& r = a.ring();
  if (b.is_zero()) {
    if (a.is_zero()) return zero(r);
    return std::nullopt;
  }
  switch (r.kind()) {
    case RingKind::Integers: {
      if (!mpz_divisible_p(a.mpz().get_mpz_t(), b.mpz().get_mpz_t())) return std::nullopt;
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a.mpz().get_mpz_t(), b.mpz().get_mpz_t());
      return Scalar(r, std::move(q));
    }
    case RingKind::Rationals:
    case RingKind::FracField:
      return a / b;
    case RingKind::PrimeField:
      return a / b;
    case RingKind::ModRing: {
      if (r.is_field()) return a / b;
      // Least solution of b*x = a mod n, when one exists.
      mpz_class n = r.modulus();
      mpz_class g = gcd(b.mpz(), n);
      if (!mpz_divisible_p(a.mpz().get_mpz_t(), g.get_mpz_t())) return std::nullopt;
      mpz_class n2 = n / g, b2 = b.mpz() / g, a2 = a.mpz() / g, inv;
      if (n2 == 1) return zero(r);
      if (mpz_invert(inv.get_mpz_t(), b2.get_mpz_t(), n2.get_mpz_t()) == 0) return std::nullopt;
      return Scalar(r, mod_reduce(a2 * inv, n2));
    }
    case RingKind::Poly: {
      // Greedy long division; complete over domain bases.
      Scalar rem = a;
      std::vector<Scalar> q(std::max<size_t>(a.coeffs().size(), 1), Scalar::zero(r.base()));
      int db = b.degree();
      while (!rem.is_zero() && rem.degree() >= db) {
        auto t = div_exact(rem.coeffs().back(), b.coeffs().back());
        if (!t) return std::nullopt;
        int shift = rem.degree() - db;
        q[shift] = *t;
        std::vector<Scalar> mono(shift + 1, Scalar::zero(r.base()));
        mono[shift] = *t;
        rem = rem - Scalar::poly(r, std::move(mono)) * b;
        if (!rem.is_zero() && rem.degree() >= db + shift) return std::nullopt;  // no progress
      }
      if (!rem.is_zero()) return std::nullopt;
      return Scalar::poly(r, std::move(q));
    }
    case RingKind::ProductMod: {
      std::vector<mpz_class> out(a.values().size());
      Ring comp = Ring::mod_ring(r.modulus());
      for (size_t i = 0; i < out.size(); ++i) {
        auto q = div_exact(from_mpz(comp, a.values()[i]), from_mpz(comp, b.values()[i]));
        if (!q) return std::nullopt;
        out[i] = q->mpz();
      }
      return product(r, std::move(out));
    }
  }
  return std::nullopt;
}

bool Scalar::is_unit() const {
  const Ring& r = ring_;
  switch (r.kind()) {
    case RingKind::Integers:
      return mpz() == 1 || mpz() == -1;
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::FracField:
      return !is_zero();
    case RingKind::ModRing:
      return gcd(mpz(), r.modulus()) == 1;
    case RingKind::Poly:
      return degree() == 0 && coeffs()[0].is_unit();
    case RingKind::ProductMod: {
      for (const auto& v : values())
        if (gcd(v, r.modulus()) != 1) return false;
      return true;
    }
  }
  return false;
}

const mpz_class& Scalar::mpz() const { return std::get<mpz_class>(value_); }
const mpq_class& Scalar::mpq() const { return std::get<mpq_class>(value_); }
const std::vector<Scalar>& Scalar::coeffs() const { return std::get<std::vector<Scalar>>(value_); }
const Scalar& Scalar::num() const { return std::get<std::shared_ptr<const Frac>>(value_)->num; }
const Scalar& Scalar::den() const { return std::get<std::shared_ptr<const Frac>>(value_)->den; }
const std::vector<mpz_class>& Scalar::values() const { return std::get<std::vector<mpz_class>>(value_); }

int Scalar::degree() const { return static_cast<int>(coeffs().size()) - 1; }

std::string Scalar::to_string() const {
  switch (ring_.kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return mpz().get_str();
    case RingKind::Rationals:
      return mpq().get_str();
    case RingKind::Poly: {
      if (coeffs().empty()) return "0";
      std::ostringstream os;
      bool first = true;
      for (size_t i = 0; i < coeffs().size(); ++i) {
        if (coeffs()[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << coeffs()[i].to_string() << ")";
        if (i >= 1) os << "*" << ring_.var();
        if (i >= 2) os << "^" << i;
      }
      return os.str();
    }
    case RingKind::FracField:
      return "(" + num().to_string() + ")/(" + den().to_string() + ")";
    case RingKind::ProductMod: {
      std::ostringstream os;
      os << "[";
      for (size_t i = 0; i < values().size(); ++i) {
        if (i) os << ",";
        os << values()[i].get_str();
      }
      os << "]";
      return os.str();
    }
  }
  return "?";
}

namespace {

// Pseudo-remainder of f by g (deg f >= deg g > ... ), suitable for primitive
// remainder sequences: repeatedly scale by lc(g) so elimination stays in the
// ring.
Scalar pseudo_rem(Scalar f, const Scalar& g) {
  const Ring r = f.ring();
  const Scalar& lcg = g.coeffs().back();
  int dg = g.degree();
  while (!f.is_zero() && f.degree() >= dg) {
    int shift = f.degree() - dg;
    std::vector<Scalar> mono(shift + 1, Scalar::zero(r.base()));
    mono[shift] = f.coeffs().back();
    f = f * Scalar::poly(r, {lcg}) - Scalar::poly(r, std::move(mono)) * g;
  }
  return f;
}

Scalar content(const Scalar& f) {
  Scalar c = Scalar::zero(f.ring().base());
  for (const auto& co : f.coeffs()) c = scalar_gcd(c, co);
  return c;
}

Scalar primitive_part(const Scalar& f) {
  if (f.is_zero()) return f;
  Scalar c = content(f);
  if (c.is_one()) return f;
  std::vector<Scalar> out;
  out.reserve(f.coeffs().size());
  for (const auto& co : f.coeffs()) out.push_back(*Scalar::div_exact(co, c));
  return Scalar::poly(f.ring(), std::move(out));
}

}  // namespace

Scalar scalar_gcd(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  const Ring& r = a.ring();
  if (a.is_zero() && b.is_zero()) return Scalar::zero(r);
  switch (r.kind()) {
    case RingKind::Integers: {
      mpz_class g = gcd(a.mpz(), b.mpz());
      return Scalar::from_mpz(r, g);
    }
    case RingKind::Rationals:
    case RingKind::PrimeField:
      return Scalar::one(r);
    case RingKind::ModRing:
      if (r.is_field()) return Scalar::one(r);
      fail(Err::NotADomain, "gcd over composite mod ring");
    case RingKind::Poly: {
      if (!r.is_domain()) fail(Err::NotADomain, "gcd over " + r.to_string());
      auto canon = [](const Scalar& f) {
        return f * Scalar::poly(f.ring(), {normalizing_unit(f.coeffs().back())});
      };
      if (a.is_zero()) return canon(b);
      if (b.is_zero()) return canon(a);
      Scalar ca = content(a), cb = content(b);
      Scalar f = primitive_part(a), g = primitive_part(b);
      if (f.degree() < g.degree()) std::swap(f, g);
      while (!g.is_zero()) {
        Scalar rem = primitive_part(pseudo_rem(f, g));
        f = g;
        g = rem;
      }
      Scalar cg = scalar_gcd(ca, cb);
      std::vector<Scalar> scaled;
      scaled.reserve(f.coeffs().size());
      for (const auto& co : f.coeffs()) scaled.push_back(co * cg);
      Scalar result = Scalar::poly(r, std::move(scaled));
      return result * Scalar::poly(r, {normalizing_unit(result.coeffs().back())});
    }
    default:
      fail(Err::UnsupportedRing, "gcd over " + r.to_string());
  }
}

Scalar scalar_lcm(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar::zero(a.ring());
  Scalar g = scalar_gcd(a, b);
  Scalar l = *Scalar::div_exact(a * b, g);
  if (l.ring().kind() == RingKind::Integers && l.mpz() < 0) return -l;
  return l;
}

bool embeddable(const Ring& from, const Ring& target) {
  if (from == target) return true;
  switch (target.kind()) {
    case RingKind::Integers:
      return false;
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::ModRing:
    case RingKind::ProductMod:
      return from.kind() == RingKind::Integers;
    case RingKind::Poly:
      return embeddable(from, target.base());
    case RingKind::FracField:
      return from == target.base() || embeddable(from, target.base());
  }
  return false;
}

Scalar embed(const Scalar& a, const Ring& target) {
  if (a.ring() == target) return a;
  switch (target.kind()) {
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::ModRing:
    case RingKind::ProductMod:
      if (a.ring().kind() == RingKind::Integers) return Scalar::from_mpz(target, a.mpz());
      break;
    case RingKind::Poly: {
      if (embeddable(a.ring(), target.base())) {
        Scalar c = embed(a, target.base());
        std::vector<Scalar> coeffs;
        if (!c.is_zero()) coeffs.push_back(std::move(c));
        return Scalar::poly(target, std::move(coeffs));
      }
      break;
    }
    case RingKind::FracField: {
      if (embeddable(a.ring(), target.base()))
        return Scalar::fraction(target, embed(a, target.base()), Scalar::one(target.base()));
      break;
    }
    default:
      break;
  }
  fail(Err::UnsupportedRing,
       "no canonical embedding " + a.ring().to_string() + " -> " + target.to_string());
}

bool annihilator_infinite(const Scalar& b) {
  const Ring& r = b.ring();
  if (r.is_domain()) return b.is_zero() && !r.is_finite();
  switch (r.kind()) {
    case RingKind::ModRing:
      return false;  // finite ring
    case RingKind::Poly: {
      Ring base = r.base();
      if (base.kind() != RingKind::ModRing)
        fail(Err::UnsupportedRing, "annihilator over " + r.to_string());
      // A polynomial over Z/nZ has a nonzero annihilator exactly when a
      // nonzero constant kills it, i.e. gcd(content, n) > 1; any nonzero
      // annihilator ideal of an infinite polynomial ring is infinite.
      mpz_class g = base.modulus();
      for (const auto& c : b.coeffs()) g = gcd(g, c.mpz());
      return g > 1;
    }
    case RingKind::ProductMod: {
      const auto& gs = r.groups();
      for (size_t i = 0; i < gs.size(); ++i) {
        if (!gs[i].infinite) continue;
        if (gcd(b.values()[i], r.modulus()) != 1) return true;
      }
      return false;
    }
    default:
      fail(Err::UnsupportedRing, "annihilator over " + r.to_string());
  }
}

Scalar fraction_field_embed(const Scalar& a) {
  Ring target = a.ring().fraction_field();
  if (target == a.ring()) return a;
  if (target.kind() == RingKind::Rationals) return Scalar::rational(mpq_class(a.mpz()));
  return Scalar::fraction(target, a, Scalar::one(a.ring()));
}

}  // namespace rado
