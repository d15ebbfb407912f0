#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace rado {

// Supported coefficient structures. Poly nests to depth 2 (Z[x], Z[x,y],
// F_p[x], (Z/nZ)[x]). FracField wraps a polynomial domain and is the codomain
// of fraction_field_embed; Rationals plays that role for Integers.
// ProductMod(n) models a product of copies of Z/nZ indexed by finitely many
// groups, each group carrying a finite count or a symbolic "infinite"
// multiplicity; elements are constant on each group.
enum class RingKind {
  Integers,
  Rationals,
  PrimeField,
  ModRing,
  Poly,
  FracField,
  ProductMod,
};

struct Multiplicity {
  bool infinite = false;
  unsigned long count = 0;  // meaningful when !infinite

  static Multiplicity inf() { return {true, 0}; }
  static Multiplicity finite(unsigned long c) { return {false, c}; }
  bool operator==(const Multiplicity& o) const {
    return infinite == o.infinite && (infinite || count == o.count);
  }
};

class Ring {
 public:
  Ring();  // Integers

  static Ring integers();
  static Ring rationals();
  static Ring prime_field(const mpz_class& p);  // checks primality
  static Ring mod_ring(const mpz_class& n);     // n >= 2
  static Ring poly(const Ring& base);           // variable named by depth: x, then y
  static Ring fraction_field_of(const Ring& poly_ring);
  static Ring product_mod(const mpz_class& n, std::vector<Multiplicity> groups);

  RingKind kind() const { return node_->kind; }
  const mpz_class& modulus() const;                 // PrimeField / ModRing / ProductMod
  Ring base() const;                                // Poly / FracField
  const std::vector<Multiplicity>& groups() const;  // ProductMod
  const std::string& var() const;                   // Poly

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }

  bool is_field() const;   // Rationals, PrimeField, FracField, ModRing(prime)
  bool is_domain() const;  // fields, Integers, Poly over a domain
  bool is_finite() const;  // PrimeField, ModRing, all-finite ProductMod
  int poly_depth() const;  // number of Poly layers on top of the scalar base

  // Smallest field this domain embeds into, as a descriptor:
  // Z -> Q, fields -> themselves, Poly(domain) -> FracField(Poly(domain)).
  // Throws NotADomain otherwise.
  Ring fraction_field() const;

  std::string to_string() const;

 private:
  struct Node {
    RingKind kind;
    mpz_class modulus;
    std::shared_ptr<const Node> base;
    std::vector<Multiplicity> groups;
    std::string var;
  };
  explicit Ring(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool is_probable_prime(const mpz_class& n);

// Prime factorisation by trial division; used for ModRing/ProductMod moduli.
// Throws UnsupportedRing when a cofactor resists the trial-division bound.
std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n);

bool is_squarefree(const mpz_class& n);

}  // namespace rado
