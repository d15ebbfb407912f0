#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rado/witness.hpp"

namespace rado {

// Dense matrix over a prime field, entries reduced to [0, p).
struct FpMat {
  long p = 2;
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<long>> a;

  static FpMat zero(long p, int rows, int cols);
  static FpMat identity(long p, int n);
  std::vector<long> apply(const std::vector<long>& v) const;
  FpMat times(const FpMat& o) const;
  bool operator==(const FpMat& o) const;
};

// Particular solution of A x = b over F_p; nullopt when inconsistent.
std::optional<std::vector<long>> fp_solve(const FpMat& A, const std::vector<long>& b);

// Row space over F_p kept in reduced echelon form.
class FpSpan {
 public:
  FpSpan(long p, int dim);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::vector<long>>& rows() const { return rows_; }

  bool insert(std::vector<long> v);  // true when the rank grew
  bool contains(std::vector<long> v) const;
  // Coordinates of v in the stored basis; nullopt when v is outside.
  std::optional<std::vector<long>> coordinates(const std::vector<long>& v) const;
  // Basis of { x : r . x = 0 for every stored row }.
  std::vector<std::vector<long>> kernel() const;

 private:
  std::vector<long> reduce(std::vector<long> v, std::vector<long>* coords) const;

  long p_;
  int dim_;
  std::vector<std::vector<long>> rows_;
  std::vector<int> pivots_;
};

// A module given by one action matrix per algebra basis element.
struct ModuleRep {
  int dim = 0;
  std::vector<FpMat> action;
};

// Commutative unital algebra over F_p with structure constants, a
// distinguished ideal, and a module (the algebra itself when none is given).
// mul[i][j] holds the coordinates of e_i * e_j; the multiplication is checked
// commutative, associative and unital, the ideal basis closed under
// multiplication by every basis element, and a supplied module verified to be
// a representation.
class FiniteAlgebra {
 public:
  FiniteAlgebra(long p, std::vector<std::string> basis,
                std::vector<std::vector<std::vector<long>>> mul,
                std::vector<std::vector<long>> ideal_basis,
                std::optional<ModuleRep> module = std::nullopt,
                std::vector<long> unit = {});

  long p() const { return p_; }
  int dim() const { return dim_; }
  const std::vector<std::string>& basis() const { return basis_; }
  const std::vector<long>& unit() const { return unit_; }
  const std::vector<std::vector<std::vector<long>>>& mul() const { return mul_; }
  const std::vector<std::vector<long>>& ideal() const { return ideal_.rows(); }
  int ideal_dim() const { return ideal_.rank(); }
  int module_dim() const { return module_dim_; }
  bool has_module() const { return explicit_module_; }

  std::vector<long> mul_vec(const std::vector<long>& u, const std::vector<long>& v) const;
  // Action of a ring element on the module.
  FpMat action_of(const std::vector<long>& r) const;
  const FpMat& basis_action(int i) const { return action_[i]; }

  // Same algebra with a different distinguished ideal.
  FiniteAlgebra with_ideal(std::vector<std::vector<long>> ideal_basis) const;
  // Smallest ideal containing the given elements.
  std::vector<std::vector<long>> ideal_generated_by(
      const std::vector<std::vector<long>>& gens) const;

 private:
  long p_;
  int dim_;
  std::vector<std::string> basis_;
  std::vector<std::vector<std::vector<long>>> mul_;
  std::vector<long> unit_;
  FpSpan ideal_;
  bool explicit_module_ = false;
  int module_dim_;
  std::vector<FpMat> action_;  // per basis element, on the module
};

// phi is given by its values on the ideal basis (ideal_dim rows of module
// coordinates) and extended F_p-linearly.
struct HModuleReport {
  int dim_hom = 0;
  int dim_z = 0;
  int dim_b = 0;
  int dim_h = 0;
  std::vector<std::vector<long>> representative;  // empty when dim_h == 0
};

// Z is cut out by the per-element condition phi(t) in tM for every t in the
// ideal (p^dim(ideal) elements, budget 10^6; scalar multiples of t share the
// condition and are skipped); B is the image of m -> (t -> tm); H = Z/B.
// The representative, when present, re-verifies exhaustively and is not
// principal.
HModuleReport compute_H(const FiniteAlgebra& alg);

// The R-linearity constraints alone: phi(e_i t) = e_i phi(t) on the ideal
// basis.
bool verify_homomorphism(const FiniteAlgebra& alg, const std::vector<std::vector<long>>& phi);
// Exhaustive phi(t) in tM over every t in the ideal.
bool verify_in_z(const FiniteAlgebra& alg, const std::vector<std::vector<long>>& phi);
// m with phi(t) = tm for all t, when one exists.
std::optional<std::vector<long>> principal_witness(const FiniteAlgebra& alg,
                                                   const std::vector<std::vector<long>>& phi);

// Single constant m with (sum_j a_1j) m = b_1, ..., (sum_j a_kj) m = b_k.
// Supported pairs: (Z, Z), (Z, Z/nZ), (Z/nZ, itself), (F_p[x], itself); the
// right-hand side lives in the module ring.
std::optional<Scalar> constant_solution(const Matrix& A, const std::vector<Scalar>& b);
// FiniteAlgebra pairs: rows are the k row sums as algebra elements, b holds
// module coordinates.
std::optional<std::vector<long>> constant_solution(const FiniteAlgebra& alg,
                                                   const std::vector<std::vector<long>>& row_sums,
                                                   const std::vector<std::vector<long>>& b);

// Nonhomogeneous decision. Single equations are decided outright; systems
// only once a vanishing criterion for H applies (recorded in the verdict
// detail), otherwise the decision is refused with HNotKnownZero. Not-PR
// verdicts attach a residue colouring whenever a refuting row combination
// with a finite quotient exists.
Verdict pr_nonhom(const Matrix& A, const std::vector<Scalar>& b);
Verdict pr_nonhom(const FiniteAlgebra& alg,
                  const std::vector<std::vector<std::vector<long>>>& rows,
                  const std::vector<std::vector<long>>& b);

struct FunctorialityReport {
  bool z_mapped_into_z = false;
  bool b_mapped_into_b = false;
  int dim_h_module = 0;
  int dim_h_base_change = 0;
  bool ann_base_change_equal = false;
};

// Checks, on the given instance, that composition with f maps Z(I,M) into
// Z(I,N) and B into B, and that passing to R/ann(M) preserves dim H.
FunctorialityReport h_functoriality_check(const FiniteAlgebra& alg, const ModuleRep& target,
                                          const FpMat& f);

// 10-dimensional local algebra whose ideal (x, y) carries a nonprincipal
// homomorphism sending x to xz: the canonical dim H >= 1 witness.
FiniteAlgebra obstruction_algebra(long p);
// 15-dimensional truncated polynomial algebra acting on the 10-dimensional
// quotient through the projection; exercises annihilator base change.
FiniteAlgebra truncated_cover_algebra(long p);

}  // namespace rado
