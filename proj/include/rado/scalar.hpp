#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rado/ring.hpp"

namespace rado {

// An exact ring element tagged with its ring descriptor. Canonical forms:
// rationals fully reduced with positive denominator (mpq_class invariant),
// mod-ring and product values in [0, n), polynomials with no trailing zero
// coefficients (zero polynomial = empty coefficient vector), fractions
// gcd-reduced with unit-normalised denominator.
class Scalar {
 public:
  Scalar();  // integer 0

  static Scalar zero(const Ring& r);
  static Scalar one(const Ring& r);
  // Image of a plain integer under the unique ring map Z -> R.
  static Scalar from_int(const Ring& r, long v);
  static Scalar from_mpz(const Ring& r, const mpz_class& v);
  static Scalar rational(const mpq_class& q);
  // coeffs[i] is the coefficient of var^i, each over r.base().
  static Scalar poly(const Ring& r, std::vector<Scalar> coeffs);
  static Scalar fraction(const Ring& r, Scalar num, Scalar den);
  // One value per descriptor group, reduced mod n.
  static Scalar product(const Ring& r, std::vector<mpz_class> values);

  const Ring& ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Multiplicative inverse; requires a field descriptor (NonFieldDescriptor)
  // and a nonzero element.
  Scalar inverse() const;
  // a / b in a field.
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  // Exact division within the ring; nullopt when b does not divide a.
  static std::optional<Scalar> div_exact(const Scalar& a, const Scalar& b);

  bool is_unit() const;

  // Value accessors (checked by kind).
  const mpz_class& mpz() const;             // Integers / PrimeField / ModRing
  const mpq_class& mpq() const;             // Rationals
  const std::vector<Scalar>& coeffs() const;  // Poly (ascending degree)
  const Scalar& num() const;                // FracField
  const Scalar& den() const;                // FracField
  const std::vector<mpz_class>& values() const;  // ProductMod (per group)

  int degree() const;  // Poly: -1 for the zero polynomial

  std::string to_string() const;

 private:
  struct Frac;
  using Value = std::variant<mpz_class, mpq_class, std::vector<Scalar>,
                             std::shared_ptr<const Frac>, std::vector<mpz_class>>;
  Scalar(Ring r, Value v) : ring_(std::move(r)), value_(std::move(v)) {}
  void normalize();

  Ring ring_;
  Value value_;
};

struct Scalar::Frac {
  Scalar num;
  Scalar den;
};

// GCD in the UFDs used for fraction reduction: Integers (nonnegative gcd),
// fields (1 unless both zero), Poly over these (primitive pseudo-remainder
// sequence, unit-normalised).
Scalar scalar_gcd(const Scalar& a, const Scalar& b);
Scalar scalar_lcm(const Scalar& a, const Scalar& b);

// Canonical embedding of `a` into `target` when one exists: identity,
// Z -> Q / F_p / Z-nZ / ProductMod (diagonal), base -> Poly (constant),
// Poly -> FracField, composed recursively. Throws UnsupportedRing otherwise.
Scalar embed(const Scalar& a, const Ring& target);

// True when `target` can canonically receive elements of `from`.
bool embeddable(const Ring& from, const Ring& target);

// Decides whether Ann(b) is infinite in b's ring. Domains: infinite iff
// b = 0 and the ring is infinite. ModRing / finite rings: never. Poly over
// ModRing(n): a nonzero annihilator exists iff gcd(content(b), n) > 1, and
// any nonzero annihilator ideal of the polynomial ring is infinite.
// ProductMod: infinite iff some infinite-multiplicity group value is a
// non-unit mod n.
bool annihilator_infinite(const Scalar& b);

// Embeds a domain element into its fraction field descriptor.
Scalar fraction_field_embed(const Scalar& a);

}  // namespace rado
