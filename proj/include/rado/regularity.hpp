#pragma once

#include "rado/witness.hpp"

namespace rado {

// Columns condition over a domain, decided over its fraction field: an
// ordered partition where I_0 sums to zero and each later block sum lies in
// the span of all earlier columns. Returns the canonical witness
// (lexicographically least in (|I_0|, I_0 bitmask, per-level block bitmask)
// order) or nullopt. Budget l <= 20.
std::optional<PartitionWitness> columns_condition(const Matrix& A);

// Independent oracle: exhaustive enumeration of ordered set partitions with
// fresh rank-based membership checks, no memoization. Budget l <= 8.
std::optional<PartitionWitness> columns_condition_bruteforce(const Matrix& A);

// Generalised columns condition over the matrix's ring. Supported:
// infinite domains (reduces to the columns condition with denominators
// cleared), finite fields and ModRing(n) (degenerates to m = 0: some nonzero
// d_0 kills the total column sum), Poly over ModRing(n) (per prime power of
// n: chain-ring search with localization membership), ProductMod (per group:
// multiplier-tuple search over divisor candidates). Witnesses carry explicit
// multipliers and in-ring combinations.
std::optional<PartitionWitness> gcc(const Matrix& A);

// One factor of a product ring: the same k x l matrix value repeated at
// finitely or infinitely many coordinates.
struct ProductComponent {
  Matrix matrix;  // entries over ModRing(n)
  Multiplicity multiplicity;
};

// Assembles the ProductMod matrix whose group g value at entry (i,j) is
// components[g].matrix(i,j).
Matrix product_matrix(const std::vector<ProductComponent>& components, const mpz_class& n);

// Partition regularity over prod Z/nZ: PR iff for some prime p | n, some
// component's columns all sum to zero mod p, or some infinite-multiplicity
// component satisfies the columns condition mod p.
Verdict pr_product(const std::vector<ProductComponent>& components, const mpz_class& n);

// Partition regularity of an integer matrix over the finite Z-module Z/nZ:
// PR iff a nonzero constant solution exists, i.e. all row sums vanish mod p
// for some prime p | n. The refuting colouring otherwise is the all-distinct
// one.
Verdict pr_module_mod_n(const Matrix& A, const mpz_class& n);

// The 3x3 matrix [[1,1,-1],[0,b,0],[0,0,b]] over b's ring: partition regular
// iff ann(b) is infinite; satisfies the generalised columns condition iff
// some d with db = 0 has d^n R infinite for all n.
Matrix build_B3(const Scalar& b);

// The 2x3 matrix [[1,p-1,2],[0,0,p]] over r; requires prime p >= 5.
Matrix build_B2(const Ring& r, const mpz_class& p);

// Whether partition regularity and the generalised columns condition
// coincide for every matrix over r. Domains: true. ModRing(n): true for all
// n (finite rings: both sides reduce to a nonzero constant solution).
// Poly over ModRing(n): true iff n squarefree. ProductMod: true iff all
// groups are finite or n is squarefree.
bool rado_ring_check(const Ring& r);

// Least solution data for M r = v over Z/nZ (free variables zero, CRT over
// prime powers with minimal-valuation pivoting); nullopt when unsolvable.
std::optional<std::vector<mpz_class>> solve_mod(const std::vector<std::vector<mpz_class>>& M,
                                                const std::vector<mpz_class>& v,
                                                const mpz_class& n);

}  // namespace rado
