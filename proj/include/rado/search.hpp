#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rado/colouring.hpp"

namespace rado {

// A finite, deterministically ordered slice of a ring. Integer windows
// enumerate {1..N} or {-N..N} as 1, -1, 2, -2, ..., N, -N, 0 (zero last so
// reported witnesses prefer nonzero entries). Polynomial windows enumerate
// coefficient tuples of degree <= `degree` with the same per-coefficient
// order (zero first), F_p coefficients as 0..p-1.
struct SearchWindow {
  Ring domain = Ring::integers();
  long bound = 0;  // integers: N; Poly over Integers: coefficient bound
  int degree = -1;
  bool positive_only = false;
  bool exclude_zero_vector = true;

  static SearchWindow integers(long n, bool positive = false);
  static SearchWindow polynomials(const Ring& poly_ring, int degree, long coeff_bound = 0);

  std::vector<Scalar> values() const;
  bool contains(const Scalar& v) const;
  unsigned long size() const;
  std::string to_string() const;
};

// First chi-monochromatic solution of A m = 0 (m != 0) with entries in the
// window, in lexicographic order over the window's value order; nullopt when
// the window holds none. The last variable is solved from the others, so the
// enumeration cost is size^(l-1); budget 2*10^8 tuples for the integer fast
// path, 10^6 otherwise.
std::optional<std::vector<Scalar>> find_mono_solution(const Matrix& A, const Colouring& chi,
                                                      const SearchWindow& w);

// Inhomogeneous variant: first monochromatic solution of A m = b. The
// nontriviality requirement disappears (0 never solves b != 0).
std::optional<std::vector<Scalar>> find_mono_solution(const Matrix& A,
                                                      const std::vector<Scalar>& b,
                                                      const Colouring& chi,
                                                      const SearchWindow& w);

struct SearchReport {
  bool found = false;
  std::optional<std::vector<Scalar>> solution;
  SearchWindow window;
  std::string colouring_kind;
  long elapsed_ms = 0;
};

SearchReport run_search(const Matrix& A, const Colouring& chi, const SearchWindow& w);

// Least n such that every r-colouring of F = {1..n} admits a monochromatic
// nontrivial solution with entries in F, checked by exhausting the r^(n-1)
// colourings with the first element's colour fixed. `bad_colouring` is the
// minimality evidence: colours of 1..n-1 under which no solution is
// monochromatic. Throws BudgetExhausted (naming the largest prefix checked)
// when no prefix up to max_elements works or the colouring space overflows.
struct FiniteWitness {
  long n = 0;
  std::vector<long> bad_colouring;
};

FiniteWitness finite_witness(const Matrix& A, int colours, long max_elements = 25);

// Certificate cross-check: mechanical replay plus a windowed search under
// the certificate's least-nonzero-digit colouring. Sound certificates must
// leave the window clean.
struct CertificateCheck {
  bool replay_ok = false;
  std::string message;
  bool window_clean = false;
  std::optional<std::vector<Scalar>> counterexample;
};

CertificateCheck validate_certificate(const Matrix& A, const RefutationCertificate& cert,
                                      const SearchWindow& w);

}  // namespace rado
