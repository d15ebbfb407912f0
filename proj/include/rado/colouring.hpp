#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rado/matrix.hpp"

namespace rado {

// Coefficient scan order for the polynomial colourings: xyp picks the
// lexicographically least nonzero coefficient position, pxy first minimises
// the p-adic valuation of the coefficient and breaks ties lexicographically.
enum class MOrder { xyp, pxy };

// An immutable total colouring rule on a ring domain. Evaluation is pure;
// the colour of 0 is the reserved colour 0 for every built-in kind except
// the 1-based quotient colourings fed to devissage().
class Colouring {
 public:
  // Least nonzero base-p digit of the p-adic unit part; on Q the unit part
  // u/v is coloured by u * v^{-1} mod p. Domain: Integers or Rationals.
  static Colouring cp(const Ring& domain, const mpz_class& p);
  // Z[x] / Z[x,y]: colour = c_p of the coefficient chosen by `order`.
  static Colouring m_zxy(const Ring& domain, const mpz_class& p, MOrder order);
  // F_p[x]: the lowest-degree nonzero coefficient, as a residue in {1..p-1}.
  static Colouring m_fpx(const Ring& domain);
  // Image in the finite quotient M/aM: Integers mod |a|, ModRing(n) mod
  // gcd(a, n), F_p[x] by remainder mod a (p^deg(a) colours, encoded base p).
  static Colouring residue(const Ring& domain, const Scalar& a);
  // Always `value`; used as a 1-based quotient part colouring.
  static Colouring constant(const Ring& domain, long value, long colours);
  // Split Z along d*Z: m in d*Z keeps inner(m); otherwise
  // r + quotient(m mod d) with r = inner.colour_count(). `quotient` colours
  // the nonzero residues of Z/dZ with values in {1..s}.
  static Colouring devissage(const mpz_class& d, Colouring inner, Colouring quotient);

  const Ring& domain() const { return domain_; }
  long colour_count() const { return colours_; }
  const std::string& kind() const { return kind_; }

  long eval(const Scalar& m) const;
  // Fast path for integer domains (cp / residue / constant / devissage).
  long eval_i64(long long m) const;

  // Serialization accessors (used by the JSON layer).
  const mpz_class& prime() const;
  MOrder order() const;
  const Scalar& residue_scalar() const;
  long constant_value() const;
  const mpz_class& split_modulus() const;
  const Colouring& inner() const;
  const Colouring& quotient() const;

 private:
  struct CpParams {
    mpz_class p;
  };
  struct MZxyParams {
    mpz_class p;
    MOrder order;
  };
  struct MFpxParams {};
  struct ResidueParams {
    Scalar a;
    mpz_class modulus;  // quotient modulus actually used (|a| or gcd(a, n))
  };
  struct ConstParams {
    long value;
  };
  struct DevParams {
    mpz_class d;
    std::shared_ptr<const Colouring> inner;
    std::shared_ptr<const Colouring> quotient;
  };
  using Params =
      std::variant<CpParams, MZxyParams, MFpxParams, ResidueParams, ConstParams, DevParams>;

  Colouring(Ring domain, long colours, std::string kind, Params params)
      : domain_(std::move(domain)),
        colours_(colours),
        kind_(std::move(kind)),
        params_(std::move(params)) {}

  Ring domain_;
  long colours_;
  std::string kind_;
  Params params_;
};

// Convenience closed forms.
long cp_value(const mpz_class& n, const mpz_class& p);
long m_colouring_zxy(const Scalar& f, const mpz_class& p, MOrder order);

// One chain state of the refutation analysis: `mask` names the columns
// already absorbed, `v` is an integer (or F_p) vector orthogonal to them,
// and `nonzero_products` records (subset J of the complement, (sum_J c, v))
// for every J whose column sum falls outside the span of the masked columns.
struct SeparatingState {
  uint32_t mask = 0;
  std::vector<mpz_class> v;
  std::vector<std::pair<uint32_t, mpz_class>> nonzero_products;
};

struct SeparatingVectors {
  Ring field;  // Rationals for integer input, else the entry field
  std::vector<SeparatingState> states;  // breadth-first from the empty mask
  long sweep_bound = 0;                 // largest moment parameter w consumed
};

// Deterministic construction over Z / Q / F_p matrices (k <= 10, l <= 20):
// for each chain state, sweep candidate vectors sum_t w^t b_t over a kernel
// basis {b_t} of the masked columns until every out-of-span subset sum has a
// nonzero inner product; over the rationals the sweep always terminates and
// integer vectors are emitted with denominators cleared.
SeparatingVectors separating_vectors(const Matrix& A);

// Transcript certifying that some prime p makes every least-nonzero-digit
// monochromatic solution of A x = 0 replay into a columns-condition chain,
// which columns_condition(A) = none rules out.
struct RefutationCertificate {
  uint64_t matrix_hash = 0;
  int cols = 0;
  mpz_class prime;
  SeparatingVectors vectors;
};

// none when the columns condition holds; otherwise builds the separating
// vectors, collects every recorded nonzero inner product, and picks the
// least prime dividing none of them.
std::optional<RefutationCertificate> refute(const Matrix& A);

// Mechanical replay: re-derives the reachable states and their subset
// classification, cross-checks the recorded vectors and values, confirms the
// full column set stays unreachable and that the prime divides no recorded
// value, and re-runs columns_condition(A).
bool validate_certificate(const Matrix& A, const RefutationCertificate& cert,
                          std::string* why = nullptr);

}  // namespace rado
