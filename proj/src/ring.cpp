#include "rado/ring.hpp"

#include <sstream>

#include "rado/error.hpp"

namespace rado {

const char* err_name(Err e) {
  switch (e) {
    case Err::NonFieldDescriptor: return "NonFieldDescriptor";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::NotADomain: return "NotADomain";
    case Err::UnsupportedRing: return "UnsupportedRing";
    case Err::UnsupportedPair: return "UnsupportedPair";
    case Err::NotPrime: return "NotPrime";
    case Err::PrimeTooSmall: return "PrimeTooSmall";
    case Err::InfiniteQuotient: return "InfiniteQuotient";
    case Err::NotAnIdeal: return "NotAnIdeal";
    case Err::InconsistentData: return "InconsistentData";
    case Err::MalformedInput: return "MalformedInput";
    case Err::MalformedCertificate: return "MalformedCertificate";
    case Err::HNotKnownZero: return "HNotKnownZero";
    case Err::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::BudgetExhausted: return "BudgetExhausted";
    case Err::Internal: return "Internal";
  }
  return "Error";
}

int Error::exit_code() const {
  switch (code_) {
    case Err::MalformedInput:
    case Err::MalformedCertificate:
    case Err::DimensionMismatch:
    case Err::NotPrime:
    case Err::PrimeTooSmall:
    case Err::NotAnIdeal:
    case Err::InconsistentData:
      return 1;
    default:
      return 2;
  }
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

std::vector<std::pair<mpz_class, unsigned>> factorize(const mpz_class& n) {
  if (n < 2) fail(Err::MalformedInput, "factorize expects n >= 2");
  std::vector<std::pair<mpz_class, unsigned>> out;
  mpz_class m = n;
  mpz_class d = 2;
  while (d * d <= m) {
    if (m % d == 0) {
      unsigned e = 0;
      while (m % d == 0) {
        m /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
    d = (d == 2) ? mpz_class(3) : mpz_class(d + 2);
    if (d > 10'000'000 && m > 1 && !is_probable_prime(m))
      fail(Err::UnsupportedRing, "modulus too large to factor: " + n.get_str());
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

bool is_squarefree(const mpz_class& n) {
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

Ring::Ring() : node_(std::make_shared<Node>(Node{RingKind::Integers, 0, nullptr, {}, ""})) {}

Ring Ring::integers() { return Ring(); }

Ring Ring::rationals() {
  return Ring(std::make_shared<Node>(Node{RingKind::Rationals, 0, nullptr, {}, ""}));
}

Ring Ring::prime_field(const mpz_class& p) {
  if (!is_probable_prime(p)) fail(Err::NotPrime, p.get_str() + " is not prime");
  return Ring(std::make_shared<Node>(Node{RingKind::PrimeField, p, nullptr, {}, ""}));
}

Ring Ring::mod_ring(const mpz_class& n) {
  if (n < 2) fail(Err::MalformedInput, "mod ring needs modulus >= 2");
  return Ring(std::make_shared<Node>(Node{RingKind::ModRing, n, nullptr, {}, ""}));
}

Ring Ring::poly(const Ring& base) {
  int depth = base.poly_depth();
  if (depth >= 2) fail(Err::UnsupportedRing, "polynomial nesting is limited to two variables");
  if (base.kind() == RingKind::FracField || base.kind() == RingKind::ProductMod ||
      base.kind() == RingKind::Rationals)
    fail(Err::UnsupportedRing, "unsupported polynomial base " + base.to_string());
  std::string var = depth == 0 ? "x" : "y";
  return Ring(std::make_shared<Node>(Node{RingKind::Poly, 0, base.node_, {}, var}));
}

Ring Ring::fraction_field_of(const Ring& poly_ring) {
  if (poly_ring.kind() != RingKind::Poly || !poly_ring.is_domain())
    fail(Err::NotADomain, "fraction field needs a polynomial domain");
  return Ring(std::make_shared<Node>(Node{RingKind::FracField, 0, poly_ring.node_, {}, ""}));
}

Ring Ring::product_mod(const mpz_class& n, std::vector<Multiplicity> groups) {
  if (n < 2) fail(Err::MalformedInput, "product ring needs modulus >= 2");
  if (groups.empty()) fail(Err::MalformedInput, "product ring needs at least one group");
  for (const auto& g : groups)
    if (!g.infinite && g.count == 0)
      fail(Err::MalformedInput, "product group with zero multiplicity");
  return Ring(std::make_shared<Node>(Node{RingKind::ProductMod, n, nullptr, std::move(groups), ""}));
}

const mpz_class& Ring::modulus() const {
  if (kind() != RingKind::PrimeField && kind() != RingKind::ModRing &&
      kind() != RingKind::ProductMod)
    fail(Err::Internal, "ring has no modulus");
  return node_->modulus;
}

Ring Ring::base() const {
  if (!node_->base) fail(Err::Internal, "ring has no base");
  return Ring(node_->base);
}

const std::vector<Multiplicity>& Ring::groups() const {
  if (kind() != RingKind::ProductMod) fail(Err::Internal, "ring has no groups");
  return node_->groups;
}

const std::string& Ring::var() const {
  if (kind() != RingKind::Poly) fail(Err::Internal, "ring has no variable");
  return node_->var;
}

bool Ring::operator==(const Ring& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case RingKind::Integers:
    case RingKind::Rationals:
      return true;
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return node_->modulus == o.node_->modulus;
    case RingKind::Poly:
    case RingKind::FracField:
      return base() == o.base();
    case RingKind::ProductMod: {
      if (node_->modulus != o.node_->modulus) return false;
      if (node_->groups.size() != o.node_->groups.size()) return false;
      for (size_t i = 0; i < node_->groups.size(); ++i)
        if (!(node_->groups[i] == o.node_->groups[i])) return false;
      return true;
    }
  }
  return false;
}

bool Ring::is_field() const {
  switch (kind()) {
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::FracField:
      return true;
    case RingKind::ModRing:
      return is_probable_prime(node_->modulus);
    default:
      return false;
  }
}

bool Ring::is_domain() const {
  switch (kind()) {
    case RingKind::Integers:
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::FracField:
      return true;
    case RingKind::ModRing:
      return is_probable_prime(node_->modulus);
    case RingKind::Poly:
      return base().is_domain();
    case RingKind::ProductMod:
      return false;
  }
  return false;
}

bool Ring::is_finite() const {
  switch (kind()) {
    case RingKind::PrimeField:
    case RingKind::ModRing:
      return true;
    case RingKind::ProductMod:
      for (const auto& g : node_->groups)
        if (g.infinite) return false;
      return true;
    default:
      return false;
  }
}

int Ring::poly_depth() const {
  return kind() == RingKind::Poly ? 1 + base().poly_depth() : 0;
}

Ring Ring::fraction_field() const {
  if (!is_domain()) fail(Err::NotADomain, to_string() + " is not a domain");
  switch (kind()) {
    case RingKind::Integers:
      return rationals();
    case RingKind::Rationals:
    case RingKind::PrimeField:
    case RingKind::FracField:
      return *this;
    case RingKind::ModRing:
      return *this;  // prime modulus, already a field
    case RingKind::Poly:
      return fraction_field_of(*this);
    default:
      fail(Err::NotADomain, to_string() + " is not a domain");
  }
}

std::string Ring::to_string() const {
  switch (kind()) {
    case RingKind::Integers:
      return "Z";
    case RingKind::Rationals:
      return "Q";
    case RingKind::PrimeField:
      return "F_" + node_->modulus.get_str();
    case RingKind::ModRing:
      return "Z/" + node_->modulus.get_str();
    case RingKind::Poly:
      return base().to_string() + "[" + node_->var + "]";
    case RingKind::FracField:
      return "Frac(" + base().to_string() + ")";
    case RingKind::ProductMod: {
      std::ostringstream os;
      os << "Prod(Z/" << node_->modulus.get_str() << "; ";
      for (size_t i = 0; i < node_->groups.size(); ++i) {
        if (i) os << ",";
        if (node_->groups[i].infinite)
          os << "inf";
        else
          os << node_->groups[i].count;
      }
      os << ")";
      return os.str();
    }
  }
  return "?";
}

}  // namespace rado
