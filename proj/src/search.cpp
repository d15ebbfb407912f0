#include "rado/search.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "rado/error.hpp"

namespace rado {

namespace {

constexpr long long kFastBudget = 100000000;  // window^l contract, integer path
constexpr long long kScalarBudget = 1000000;  // generic-path tuples
constexpr long long kColouringBudget = 1 << 24;
constexpr long long kSolutionBudget = 10000000;

long long search_budget(long long dflt) {
  const char* s = std::getenv("RADO_BUDGET");
  if (!s || !*s) return dflt;
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0)
    fail(Err::MalformedInput, "RADO_BUDGET must be a positive integer");
  return v;
}

std::string brace(long lo, long hi) {
  std::ostringstream os;
  os << '{' << lo << ".." << hi << '}';
  return os.str();
}

// Exact re-check of everything a search promises about a returned vector.
std::vector<Scalar> verified(const Matrix& A, const std::vector<Scalar>& b, const Colouring& chi,
                             bool require_nonzero, std::vector<Scalar> m) {
  if (require_nonzero) {
    bool nonzero = false;
    for (const Scalar& v : m) nonzero = nonzero || !v.is_zero();
    if (!nonzero) fail(Err::Internal, "search produced the zero vector");
  }
  long colour = chi.eval(m[0]);
  for (const Scalar& v : m)
    if (chi.eval(v) != colour) fail(Err::Internal, "search produced a non-monochromatic vector");
  for (int i = 0; i < A.rows(); ++i) {
    Scalar s = Scalar::zero(A.ring());
    for (int j = 0; j < A.cols(); ++j) s += A.at(i, j) * m[j];
    if (!(s == b[i])) fail(Err::Internal, "search produced a non-solution");
  }
  return m;
}

// The documented contract: full enumeration within budget, or at most three
// variables so that solving for the last one keeps the work at size^2.
void check_tuple_contract(unsigned long long size, int l, long long budget) {
  if (l <= 3) return;
  unsigned long long full = 1;
  for (int i = 0; i < l; ++i) {
    full *= size;
    if (full > static_cast<unsigned long long>(budget))
      fail(Err::BudgetExceeded,
           "window^variables exceeds the search budget and only systems with at most three "
           "variables may use larger windows");
  }
}

bool fast_eligible(const Matrix& A, const std::vector<Scalar>& b, const SearchWindow& w) {
  if (!(A.ring() == Ring::integers()) || w.degree >= 0) return false;
  if (w.bound > (1L << 31)) return false;
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      const mpz_class& v = A.at(i, j).mpz();
      if (!v.fits_slong_p() || std::llabs(v.get_si()) > (1LL << 20)) return false;
    }
  for (const Scalar& v : b)
    if (!v.mpz().fits_slong_p() || std::llabs(v.mpz().get_si()) > (1LL << 56)) return false;
  return true;
}

std::optional<std::vector<Scalar>> fast_search(const Matrix& A, const std::vector<Scalar>& b,
                                               const Colouring& chi, const SearchWindow& w,
                                               bool require_nonzero) {
  const int k = A.rows();
  const int l = A.cols();
  const Ring& z = A.ring();
  std::vector<long long> a(static_cast<size_t>(k) * l);
  std::vector<long long> rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) a[static_cast<size_t>(i) * l + j] = A.at(i, j).mpz().get_si();
    rhs[i] = b[i].mpz().get_si();
  }

  std::vector<long long> vals;
  if (w.positive_only) {
    for (long v = 1; v <= w.bound; ++v) vals.push_back(v);
  } else {
    for (long v = 1; v <= w.bound; ++v) {
      vals.push_back(v);
      vals.push_back(-v);
    }
    vals.push_back(0);
  }

  const long long budget = search_budget(kFastBudget);
  check_tuple_contract(vals.size(), l, budget);

  if (l == 1) {
    for (long long v : vals) {
      if (require_nonzero && v == 0) continue;
      bool ok = true;
      for (int i = 0; i < k; ++i) ok = ok && a[static_cast<size_t>(i) * l] * v == rhs[i];
      if (ok)
        return verified(A, b, chi, require_nonzero, {Scalar::from_int(z, static_cast<long>(v))});
    }
    return std::nullopt;
  }

  std::map<long, std::vector<long long>> classes;
  for (long long v : vals) classes[chi.eval_i64(v)].push_back(v);
  unsigned long long max_class = 0;
  for (const auto& [c, members] : classes)
    max_class = std::max<unsigned long long>(max_class, members.size());

  unsigned long long work = vals.size();
  for (int d = 0; d + 2 < l; ++d) work = std::min(work * std::max<unsigned long long>(max_class, 1),
                                                  (1ull << 62));
  if (work > static_cast<unsigned long long>(2 * budget))
    fail(Err::BudgetExceeded, "search window exceeds the tuple budget");

  std::vector<long long> chosen(l, 0);
  std::vector<long long> partial(k, 0);
  std::optional<std::vector<Scalar>> found;

  auto in_window = [&](long long v) {
    return w.positive_only ? (v >= 1 && v <= w.bound) : (v >= -w.bound && v <= w.bound);
  };
  auto finish = [&](long long last, long colour) {
    if (!in_window(last) || chi.eval_i64(last) != colour) return false;
    if (require_nonzero) {
      bool nonzero = last != 0;
      for (int j = 0; j + 1 < l; ++j) nonzero = nonzero || chosen[j] != 0;
      if (!nonzero) return false;
    }
    chosen[l - 1] = last;
    std::vector<Scalar> m;
    m.reserve(l);
    for (long long v : chosen) m.push_back(Scalar::from_int(z, static_cast<long>(v)));
    found = verified(A, b, chi, require_nonzero, std::move(m));
    return true;
  };
  auto solve_last = [&](long colour) {
    bool have = false;
    long long last = 0;
    for (int i = 0; i < k; ++i) {
      long long c = a[static_cast<size_t>(i) * l + (l - 1)];
      long long need = rhs[i] - partial[i];
      if (c == 0) {
        if (need != 0) return false;
      } else {
        if (need % c != 0) return false;
        long long cand = need / c;
        if (have && cand != last) return false;
        last = cand;
        have = true;
      }
    }
    if (have) return finish(last, colour);
    for (long long cand : classes[colour])
      if (finish(cand, colour)) return true;
    return false;
  };
  std::function<bool(int, long, const std::vector<long long>&)> descend =
      [&](int depth, long colour, const std::vector<long long>& members) {
        if (depth == l - 1) return solve_last(colour);
        for (long long v : members) {
          chosen[depth] = v;
          for (int i = 0; i < k; ++i) partial[i] += a[static_cast<size_t>(i) * l + depth] * v;
          bool ok = descend(depth + 1, colour, members);
          for (int i = 0; i < k; ++i) partial[i] -= a[static_cast<size_t>(i) * l + depth] * v;
          if (ok) return true;
        }
        return false;
      };

  for (long long v0 : vals) {
    long colour = chi.eval_i64(v0);
    chosen[0] = v0;
    for (int i = 0; i < k; ++i) partial[i] += a[static_cast<size_t>(i) * l] * v0;
    bool ok = descend(1, colour, classes[colour]);
    for (int i = 0; i < k; ++i) partial[i] -= a[static_cast<size_t>(i) * l] * v0;
    if (ok) return found;
  }
  return std::nullopt;
}

std::optional<std::vector<Scalar>> generic_search(const Matrix& A, const std::vector<Scalar>& b,
                                                  const Colouring& chi, const SearchWindow& w,
                                                  bool require_nonzero) {
  const int k = A.rows();
  const int l = A.cols();
  std::vector<Scalar> vals = w.values();

  const long long budget = search_budget(kScalarBudget);
  check_tuple_contract(vals.size(), l, budget);

  std::map<long, std::vector<Scalar>> classes;
  for (const Scalar& v : vals) classes[chi.eval(v)].push_back(v);
  unsigned long long max_class = 0;
  for (const auto& [c, members] : classes)
    max_class = std::max<unsigned long long>(max_class, members.size());

  unsigned long long work = vals.size();
  for (int d = 0; d + 2 < l; ++d) work = std::min(work * std::max<unsigned long long>(max_class, 1),
                                                  (1ull << 62));
  if (work > static_cast<unsigned long long>(budget))
    fail(Err::BudgetExceeded, "search window exceeds the tuple budget");

  std::vector<Scalar> chosen(l, Scalar::zero(A.ring()));
  std::optional<std::vector<Scalar>> found;

  auto finish = [&](const Scalar& last, long colour) {
    if (!w.contains(last) || chi.eval(last) != colour) return false;
    if (require_nonzero) {
      bool nonzero = !last.is_zero();
      for (int j = 0; j + 1 < l; ++j) nonzero = nonzero || !chosen[j].is_zero();
      if (!nonzero) return false;
    }
    chosen[l - 1] = last;
    found = verified(A, b, chi, require_nonzero, chosen);
    return true;
  };
  auto solve_last = [&](long colour, const std::vector<Scalar>& partial) {
    std::optional<Scalar> last;
    for (int i = 0; i < k; ++i) {
      const Scalar& c = A.at(i, l - 1);
      Scalar need = b[i] - partial[i];
      if (c.is_zero()) {
        if (!need.is_zero()) return false;
      } else {
        std::optional<Scalar> cand = Scalar::div_exact(need, c);
        if (!cand) return false;
        if (last && !(*cand == *last)) return false;
        last = *cand;
      }
    }
    if (last) return finish(*last, colour);
    for (const Scalar& cand : classes[colour])
      if (finish(cand, colour)) return true;
    return false;
  };
  std::function<bool(int, long, const std::vector<Scalar>&, std::vector<Scalar>)> descend =
      [&](int depth, long colour, const std::vector<Scalar>& members, std::vector<Scalar> partial) {
        if (depth == l - 1) return solve_last(colour, partial);
        for (const Scalar& v : members) {
          chosen[depth] = v;
          std::vector<Scalar> next = partial;
          for (int i = 0; i < k; ++i) next[i] += A.at(i, depth) * v;
          if (descend(depth + 1, colour, members, std::move(next))) return true;
        }
        return false;
      };

  if (l == 1) {
    for (const Scalar& v : vals) {
      if (require_nonzero && v.is_zero()) continue;
      bool ok = true;
      for (int i = 0; i < k; ++i) ok = ok && A.at(i, 0) * v == b[i];
      if (ok) return verified(A, b, chi, require_nonzero, {v});
    }
    return std::nullopt;
  }

  for (const Scalar& v0 : vals) {
    long colour = chi.eval(v0);
    chosen[0] = v0;
    std::vector<Scalar> partial(k, Scalar::zero(A.ring()));
    for (int i = 0; i < k; ++i) partial[i] += A.at(i, 0) * v0;
    if (descend(1, colour, classes[colour], std::move(partial))) return found;
  }
  return std::nullopt;
}

std::optional<std::vector<Scalar>> search_impl(const Matrix& A, const std::vector<Scalar>& b,
                                               const Colouring& chi, const SearchWindow& w,
                                               bool require_nonzero) {
  if (!(A.ring() == w.domain)) fail(Err::MalformedInput, "matrix ring differs from the window domain");
  if (!(chi.domain() == w.domain))
    fail(Err::MalformedInput, "colouring domain differs from the window domain");
  if (static_cast<int>(b.size()) != A.rows())
    fail(Err::DimensionMismatch, "right-hand side length differs from the row count");
  for (const Scalar& v : b)
    if (!(v.ring() == A.ring())) fail(Err::MalformedInput, "right-hand side leaves the matrix ring");
  if (A.cols() < 1) fail(Err::MalformedInput, "search needs at least one variable");
  if (fast_eligible(A, b, w)) return fast_search(A, b, chi, w, require_nonzero);
  return generic_search(A, b, chi, w, require_nonzero);
}

}  // namespace

SearchWindow SearchWindow::integers(long n, bool positive) {
  if (n < 1) fail(Err::MalformedInput, "window bound must be at least 1");
  SearchWindow w;
  w.domain = Ring::integers();
  w.bound = n;
  w.positive_only = positive;
  return w;
}

SearchWindow SearchWindow::polynomials(const Ring& poly_ring, int degree, long coeff_bound) {
  if (poly_ring.poly_depth() != 1)
    fail(Err::UnsupportedRing, "polynomial windows need one polynomial layer");
  const Ring& base = poly_ring.base();
  if (base == Ring::integers()) {
    if (coeff_bound < 1) fail(Err::MalformedInput, "integer coefficients need a positive bound");
  } else if (!base.is_finite()) {
    fail(Err::UnsupportedRing, "polynomial windows need integer or finite coefficients");
  }
  if (degree < 0) fail(Err::MalformedInput, "polynomial windows need degree >= 0");
  SearchWindow w;
  w.domain = poly_ring;
  w.degree = degree;
  w.bound = base == Ring::integers() ? coeff_bound : 0;
  return w;
}

std::vector<Scalar> SearchWindow::values() const {
  std::vector<Scalar> out;
  if (degree < 0) {
    if (!(domain == Ring::integers())) fail(Err::UnsupportedRing, "scalar windows are integer windows");
    if (positive_only) {
      for (long v = 1; v <= bound; ++v) out.push_back(Scalar::from_int(domain, v));
    } else {
      for (long v = 1; v <= bound; ++v) {
        out.push_back(Scalar::from_int(domain, v));
        out.push_back(Scalar::from_int(domain, -v));
      }
      out.push_back(Scalar::zero(domain));
    }
    return out;
  }

  const Ring& base = domain.base();
  std::vector<Scalar> alphabet;
  alphabet.push_back(Scalar::zero(base));
  if (base == Ring::integers()) {
    for (long c = 1; c <= bound; ++c) {
      alphabet.push_back(Scalar::from_int(base, c));
      alphabet.push_back(Scalar::from_int(base, -c));
    }
  } else {
    if (!base.modulus().fits_slong_p())
      fail(Err::BudgetExceeded, "coefficient modulus exceeds the enumeration budget");
    for (long c = 1; c < base.modulus().get_si(); ++c)
      alphabet.push_back(Scalar::from_int(base, c));
  }

  unsigned long long count = 1;
  for (int i = 0; i <= degree; ++i) {
    count *= alphabet.size();
    if (count > static_cast<unsigned long long>(kScalarBudget))
      fail(Err::BudgetExceeded, "polynomial window exceeds the enumeration budget");
  }
  std::vector<size_t> idx(degree + 1, 0);
  while (true) {
    std::vector<Scalar> coeffs;
    coeffs.reserve(degree + 1);
    for (int i = 0; i <= degree; ++i) coeffs.push_back(alphabet[idx[i]]);
    out.push_back(Scalar::poly(domain, std::move(coeffs)));
    int pos = degree;
    while (pos >= 0 && ++idx[pos] == alphabet.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

bool SearchWindow::contains(const Scalar& v) const {
  if (!(v.ring() == domain)) return false;
  if (degree < 0) {
    const mpz_class& m = v.mpz();
    if (positive_only) return m >= 1 && m <= bound;
    return m >= -bound && m <= bound;
  }
  if (v.degree() > degree) return false;
  if (domain.base() == Ring::integers()) {
    for (const Scalar& c : v.coeffs()) {
      mpz_class mag = abs(c.mpz());
      if (mag > bound) return false;
    }
  }
  return true;
}

unsigned long SearchWindow::size() const {
  if (degree < 0) return positive_only ? bound : 2 * bound + 1;
  unsigned long long alpha = domain.base() == Ring::integers()
                                 ? 2 * static_cast<unsigned long long>(bound) + 1
                                 : domain.base().modulus().get_ui();
  unsigned long long n = 1;
  for (int i = 0; i <= degree; ++i) {
    n *= alpha;
    if (n > (1ull << 62)) return 1ull << 62;
  }
  return n;
}

std::string SearchWindow::to_string() const {
  if (degree < 0) return brace(positive_only ? 1 : -bound, bound);
  std::ostringstream os;
  os << domain.to_string() << ", deg<=" << degree;
  if (domain.base() == Ring::integers()) os << ", |coeff|<=" << bound;
  return os.str();
}

std::optional<std::vector<Scalar>> find_mono_solution(const Matrix& A, const Colouring& chi,
                                                      const SearchWindow& w) {
  std::vector<Scalar> b(A.rows(), Scalar::zero(A.ring()));
  return search_impl(A, b, chi, w, w.exclude_zero_vector);
}

std::optional<std::vector<Scalar>> find_mono_solution(const Matrix& A,
                                                      const std::vector<Scalar>& b,
                                                      const Colouring& chi,
                                                      const SearchWindow& w) {
  bool zero_rhs = true;
  for (const Scalar& v : b) zero_rhs = zero_rhs && v.is_zero();
  return search_impl(A, b, chi, w, zero_rhs && w.exclude_zero_vector);
}

SearchReport run_search(const Matrix& A, const Colouring& chi, const SearchWindow& w) {
  SearchReport r;
  r.window = w;
  r.colouring_kind = chi.kind();
  auto t0 = std::chrono::steady_clock::now();
  r.solution = find_mono_solution(A, chi, w);
  auto t1 = std::chrono::steady_clock::now();
  r.elapsed_ms =
      static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  r.found = r.solution.has_value();
  return r;
}

FiniteWitness finite_witness(const Matrix& A, int colours, long max_elements) {
  if (!(A.ring() == Ring::integers()))
    fail(Err::UnsupportedRing, "finite witnesses run over the integers");
  if (colours < 1 || colours > 4) fail(Err::MalformedInput, "colour count must be 1..4");
  if (max_elements < 1 || max_elements > 25)
    fail(Err::MalformedInput, "window prefix cap must be 1..25");
  const int k = A.rows();
  const int l = A.cols();
  if (l < 1) fail(Err::MalformedInput, "finite witnesses need at least one variable");
  std::vector<long long> a(static_cast<size_t>(k) * l);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j) {
      const mpz_class& v = A.at(i, j).mpz();
      if (!v.fits_slong_p() || std::llabs(v.get_si()) > (1LL << 40))
        fail(Err::BudgetExceeded, "matrix entries exceed the finite-search word size");
      a[static_cast<size_t>(i) * l + j] = v.get_si();
    }

  const long long solution_budget = search_budget(kSolutionBudget);
  const long long colouring_budget = search_budget(kColouringBudget);

  // Evidence carried from the previous prefix; {1..0} is empty, so the empty
  // colouring vacuously admits no monochromatic solution.
  std::vector<long> bad;
  for (long n = 1; n <= max_elements; ++n) {
    unsigned long long tuples = 1;
    for (int j = 0; j < l; ++j) {
      tuples *= static_cast<unsigned long long>(n);
      if (tuples > static_cast<unsigned long long>(solution_budget))
        fail(Err::BudgetExhausted,
             "solution enumeration for " + brace(1, n) +
                 " exceeds the budget; largest prefix checked: " + brace(1, n - 1));
    }
    unsigned long long cspace = 1;
    for (long i = 1; i < n; ++i) {
      cspace *= static_cast<unsigned long long>(colours);
      if (cspace > static_cast<unsigned long long>(colouring_budget))
        fail(Err::BudgetExhausted,
             "colouring enumeration for " + brace(1, n) +
                 " exceeds the budget; largest prefix checked: " + brace(1, n - 1));
    }

    std::vector<std::vector<int>> sols;
    std::vector<int> m(l, 1);
    while (true) {
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        long long s = 0;
        for (int j = 0; j < l; ++j) s += a[static_cast<size_t>(i) * l + j] * m[j];
        ok = s == 0;
      }
      if (ok) sols.push_back(m);
      int pos = l - 1;
      while (pos >= 0 && m[pos] == n) m[pos--] = 1;
      if (pos < 0) break;
      ++m[pos];
    }

    std::vector<long> col(n, 1);
    bool all_good = true;
    while (true) {
      bool mono = false;
      for (const std::vector<int>& s : sols) {
        long c = col[s[0] - 1];
        bool same = true;
        for (int v : s) same = same && col[v - 1] == c;
        if (same) {
          mono = true;
          break;
        }
      }
      if (!mono) {
        all_good = false;
        bad.assign(col.begin(), col.end());
        break;
      }
      long pos = n - 1;
      while (pos >= 1 && col[pos] == colours) col[pos--] = 1;
      if (pos < 1) break;
      ++col[pos];
    }
    if (all_good) return FiniteWitness{n, bad};
  }
  fail(Err::BudgetExhausted, "no prefix up to " + brace(1, max_elements) +
                                 " forces a monochromatic solution; largest prefix checked: " +
                                 brace(1, max_elements));
}

CertificateCheck validate_certificate(const Matrix& A, const RefutationCertificate& cert,
                                      const SearchWindow& w) {
  if (!(w.domain == Ring::integers()))
    fail(Err::MalformedInput, "certificate checks need an integer window");
  if (!(A.ring() == Ring::integers()) || cert.cols != A.cols() || cert.prime < 2)
    fail(Err::MalformedCertificate, "certificate shape does not match the matrix");

  CertificateCheck out;
  std::string why;
  out.replay_ok = validate_certificate(A, cert, &why);
  if (!out.replay_ok) out.message = why;

  if (is_probable_prime(cert.prime)) {
    Colouring chi = Colouring::cp(Ring::integers(), cert.prime);
    std::optional<std::vector<Scalar>> sol = find_mono_solution(A, chi, w);
    out.window_clean = !sol.has_value();
    if (sol) out.counterexample = *sol;
  }
  return out;
}

}  // namespace rado
