#include "rado/colouring.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

#include "rado/error.hpp"
#include "rado/regularity.hpp"

namespace rado {

namespace {

long checked_long(const mpz_class& v) {
  if (!v.fits_slong_p()) fail(Err::BudgetExceeded, "colour count does not fit a machine word");
  return v.get_si();
}

int valuation(mpz_class v, const mpz_class& p) {
  int k = 0;
  while (v != 0 && v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

}  // namespace

long cp_value(const mpz_class& n, const mpz_class& p) {
  if (n == 0) return 0;
  mpz_class u = n;
  while (u % p == 0) u /= p;
  mpz_class r;
  mpz_mod(r.get_mpz_t(), u.get_mpz_t(), p.get_mpz_t());
  return r.get_si();
}

// ---------------------------------------------------------------------------
// Constructors.

Colouring Colouring::cp(const Ring& domain, const mpz_class& p) {
  if (domain.kind() != RingKind::Integers && domain.kind() != RingKind::Rationals)
    fail(Err::UnsupportedRing, "digit colouring lives on Z or Q");
  if (!is_probable_prime(p)) fail(Err::NotPrime, p.get_str() + " is not prime");
  return Colouring(domain, checked_long(p), "cp", CpParams{p});
}

Colouring Colouring::m_zxy(const Ring& domain, const mpz_class& p, MOrder order) {
  Ring base = domain;
  int depth = 0;
  while (base.kind() == RingKind::Poly) {
    base = base.base();
    ++depth;
  }
  if (base.kind() != RingKind::Integers || depth < 1 || depth > 2)
    fail(Err::UnsupportedRing, "coefficient-scan colouring lives on Z[x] or Z[x,y]");
  if (!is_probable_prime(p)) fail(Err::NotPrime, p.get_str() + " is not prime");
  return Colouring(domain, checked_long(p), "m_zxy", MZxyParams{p, order});
}

Colouring Colouring::m_fpx(const Ring& domain) {
  if (domain.kind() != RingKind::Poly || domain.base().kind() != RingKind::PrimeField)
    fail(Err::UnsupportedRing, "low-coefficient colouring lives on F_p[x]");
  return Colouring(domain, checked_long(domain.base().modulus()), "m_fpx", MFpxParams{});
}

Colouring Colouring::residue(const Ring& domain, const Scalar& a) {
  if (a.ring() != domain) fail(Err::MalformedInput, "residue parameter must live in the domain");
  switch (domain.kind()) {
    case RingKind::Integers: {
      if (a.is_zero()) fail(Err::InfiniteQuotient, "Z/0 is infinite");
      mpz_class mod = abs(a.mpz());
      return Colouring(domain, checked_long(mod), "residue", ResidueParams{a, mod});
    }
    case RingKind::ModRing: {
      mpz_class mod = gcd(a.mpz(), domain.modulus());
      if (mod == 0) mod = domain.modulus();  // a = 0: quotient is the whole ring
      return Colouring(domain, checked_long(mod), "residue", ResidueParams{a, mod});
    }
    case RingKind::Poly: {
      if (domain.base().kind() != RingKind::PrimeField || domain.poly_depth() != 1)
        fail(Err::UnsupportedRing, "polynomial residue colouring lives on F_p[x]");
      if (a.is_zero()) fail(Err::InfiniteQuotient, "quotient by 0 is infinite");
      mpz_class count;
      mpz_pow_ui(count.get_mpz_t(), domain.base().modulus().get_mpz_t(),
                 static_cast<unsigned long>(a.degree()));
      return Colouring(domain, checked_long(count), "residue", ResidueParams{a, count});
    }
    default:
      fail(Err::UnsupportedRing, "no finite quotient rule for " + domain.to_string());
  }
}

Colouring Colouring::constant(const Ring& domain, long value, long colours) {
  if (colours < 1 || value < 0 || value > colours)
    fail(Err::MalformedInput, "constant colour out of range");
  return Colouring(domain, colours, "constant", ConstParams{value});
}

Colouring Colouring::devissage(const mpz_class& d, Colouring inner, Colouring quotient) {
  if (d < 2) fail(Err::MalformedInput, "split modulus must be at least 2");
  if (inner.domain().kind() != RingKind::Integers)
    fail(Err::UnsupportedRing, "split colouring is implemented for submodules d*Z of Z");
  if (quotient.domain() != Ring::mod_ring(d))
    fail(Err::MalformedInput, "quotient part must colour Z/dZ");
  long colours = inner.colour_count() + quotient.colour_count();
  Ring dom = inner.domain();
  return Colouring(dom, colours, "devissage",
                   DevParams{d, std::make_shared<const Colouring>(std::move(inner)),
                             std::make_shared<const Colouring>(std::move(quotient))});
}

// ---------------------------------------------------------------------------
// Accessors.

const mpz_class& Colouring::prime() const {
  if (auto* c = std::get_if<CpParams>(&params_)) return c->p;
  if (auto* m = std::get_if<MZxyParams>(&params_)) return m->p;
  if (std::holds_alternative<MFpxParams>(params_)) return domain_.base().modulus();
  fail(Err::Internal, "colouring has no prime parameter");
}

MOrder Colouring::order() const { return std::get<MZxyParams>(params_).order; }
const Scalar& Colouring::residue_scalar() const { return std::get<ResidueParams>(params_).a; }
long Colouring::constant_value() const { return std::get<ConstParams>(params_).value; }
const mpz_class& Colouring::split_modulus() const { return std::get<DevParams>(params_).d; }
const Colouring& Colouring::inner() const { return *std::get<DevParams>(params_).inner; }
const Colouring& Colouring::quotient() const { return *std::get<DevParams>(params_).quotient; }

// ---------------------------------------------------------------------------
// Evaluation.

namespace {

long cp_rational(const mpq_class& q, const mpz_class& p) {
  if (q == 0) return 0;
  mpz_class u = q.get_num(), v = q.get_den();
  while (u % p == 0) u /= p;
  while (v % p == 0) v /= p;
  mpz_class vinv;
  mpz_invert(vinv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  mpz_class r;
  mpz_class uv = u * vinv;
  mpz_mod(r.get_mpz_t(), uv.get_mpz_t(), p.get_mpz_t());
  return r.get_si();
}

// Coefficient of x^i y^j (depth 2) or x^i with j = 0 (depth 1).
mpz_class coeff_at(const Scalar& f, int i, int j) {
  const auto& outer = f.coeffs();
  if (f.ring().poly_depth() == 1) {
    if (j != 0 || i >= static_cast<int>(outer.size())) return 0;
    return outer[i].mpz();
  }
  if (j >= static_cast<int>(outer.size())) return 0;
  const auto& inner = outer[j].coeffs();
  if (i >= static_cast<int>(inner.size())) return 0;
  return inner[i].mpz();
}

std::pair<int, int> coeff_bounds(const Scalar& f) {
  const auto& outer = f.coeffs();
  if (f.ring().poly_depth() == 1) return {static_cast<int>(outer.size()), 1};
  int imax = 0;
  for (const auto& c : outer) imax = std::max(imax, static_cast<int>(c.coeffs().size()));
  return {imax, static_cast<int>(outer.size())};
}

long eval_m_zxy(const Scalar& f, const mpz_class& p, MOrder order) {
  if (f.is_zero()) return 0;
  auto [imax, jmax] = coeff_bounds(f);
  if (order == MOrder::xyp) {
    for (int i = 0; i < imax; ++i)
      for (int j = 0; j < jmax; ++j) {
        mpz_class c = coeff_at(f, i, j);
        if (c != 0) return cp_value(c, p);
      }
    fail(Err::Internal, "nonzero polynomial without nonzero coefficients");
  }
  int best_val = -1;
  mpz_class best_coeff;
  for (int i = 0; i < imax; ++i)
    for (int j = 0; j < jmax; ++j) {
      mpz_class c = coeff_at(f, i, j);
      if (c == 0) continue;
      int v = valuation(c, p);
      if (best_val < 0 || v < best_val) {
        best_val = v;
        best_coeff = c;
      }
    }
  return cp_value(best_coeff, p);
}

long eval_m_fpx(const Scalar& f) {
  if (f.is_zero()) return 0;
  for (const auto& c : f.coeffs())
    if (!c.is_zero()) return c.mpz().get_si();
  fail(Err::Internal, "nonzero polynomial without nonzero coefficients");
}

// Remainder of f modulo a over F_p[x], encoded as sum coeff_i p^i.
long eval_residue_poly(const Scalar& f, const Scalar& a) {
  const Ring& S = f.ring();
  Scalar r = f;
  int da = a.degree();
  Scalar lead_inv = a.coeffs().back().inverse();
  while (!r.is_zero() && r.degree() >= da) {
    int dr = r.degree();
    Scalar q = r.coeffs().back() * lead_inv;
    std::vector<Scalar> mono(dr - da + 1, Scalar::zero(S.base()));
    mono.back() = q;
    r -= Scalar::poly(S, std::move(mono)) * a;
  }
  const mpz_class& p = S.base().modulus();
  mpz_class enc = 0, pw = 1;
  for (const auto& c : r.coeffs()) {
    enc += c.mpz() * pw;
    pw *= p;
  }
  return enc.get_si();
}

}  // namespace

long Colouring::eval(const Scalar& m) const {
  if (m.ring() != domain_) fail(Err::MalformedInput, "element outside the colouring domain");
  if (auto* c = std::get_if<CpParams>(&params_))
    return domain_.kind() == RingKind::Integers ? cp_value(m.mpz(), c->p)
                                                : cp_rational(m.mpq(), c->p);
  if (auto* z = std::get_if<MZxyParams>(&params_)) return eval_m_zxy(m, z->p, z->order);
  if (std::holds_alternative<MFpxParams>(params_)) return eval_m_fpx(m);
  if (auto* r = std::get_if<ResidueParams>(&params_)) {
    switch (domain_.kind()) {
      case RingKind::Integers: {
        mpz_class v;
        mpz_mod(v.get_mpz_t(), m.mpz().get_mpz_t(), r->modulus.get_mpz_t());
        return v.get_si();
      }
      case RingKind::ModRing: {
        mpz_class v;
        mpz_mod(v.get_mpz_t(), m.mpz().get_mpz_t(), r->modulus.get_mpz_t());
        return v.get_si();
      }
      default:
        return eval_residue_poly(m, r->a);
    }
  }
  if (auto* k = std::get_if<ConstParams>(&params_)) return k->value;
  const auto& dev = std::get<DevParams>(params_);
  const mpz_class& n = m.mpz();
  if (n % dev.d == 0) return dev.inner->eval(m);
  mpz_class rem;
  mpz_mod(rem.get_mpz_t(), n.get_mpz_t(), dev.d.get_mpz_t());
  return dev.inner->colour_count() +
         dev.quotient->eval(Scalar::from_mpz(Ring::mod_ring(dev.d), rem));
}

long Colouring::eval_i64(long long m) const {
  if (auto* c = std::get_if<CpParams>(&params_)) {
    if (m == 0) return 0;
    if (c->p.fits_slong_p()) {
      long long p = c->p.get_si();
      while (m % p == 0) m /= p;
      long long r = m % p;
      return static_cast<long>(r < 0 ? r + p : r);
    }
    return cp_value(mpz_class(static_cast<long>(m)), c->p);
  }
  if (auto* r = std::get_if<ResidueParams>(&params_)) {
    if (domain_.kind() == RingKind::Integers && r->modulus.fits_slong_p()) {
      long long mod = r->modulus.get_si();
      long long v = m % mod;
      return static_cast<long>(v < 0 ? v + mod : v);
    }
  }
  if (auto* k = std::get_if<ConstParams>(&params_)) return k->value;
  if (auto* dev = std::get_if<DevParams>(&params_)) {
    if (dev->d.fits_slong_p()) {
      long long d = dev->d.get_si();
      if (m % d == 0) return dev->inner->eval_i64(m);
      long long rem = m % d;
      if (rem < 0) rem += d;
      return dev->inner->colour_count() +
             dev->quotient->eval(Scalar::from_mpz(Ring::mod_ring(dev->d), mpz_class(static_cast<long>(rem))));
    }
  }
  return eval(Scalar::from_mpz(domain_, mpz_class(static_cast<long>(m))));
}

long m_colouring_zxy(const Scalar& f, const mpz_class& p, MOrder order) {
  return Colouring::m_zxy(f.ring(), p, order).eval(f);
}

// ---------------------------------------------------------------------------
// Separating vectors and refutation certificates.

namespace {

std::vector<int> mask_cols(uint32_t mask) {
  std::vector<int> out;
  for (int j = 0; mask; ++j, mask >>= 1)
    if (mask & 1) out.push_back(j);
  return out;
}

constexpr long kSweepCap = 1 << 20;
constexpr uint64_t kSubsetWorkCap = 1ull << 22;

struct StateAnalysis {
  Subspace span;
  std::vector<uint32_t> member_subsets;   // J with sum_J inside the span
  std::vector<uint32_t> outside_subsets;  // J with sum_J outside (the S_I set)
};

StateAnalysis analyse_state(const Matrix& MK, uint32_t mask, int l) {
  StateAnalysis st{Subspace(MK.ring(), MK.rows()), {}, {}};
  for (int j : mask_cols(mask)) st.span.insert(MK.col(j));
  uint32_t comp = ((l == 32 ? ~0u : (1u << l) - 1)) & ~mask;
  for (uint32_t t = (0 - comp) & comp; t != 0; t = (t - comp) & comp) {
    if (st.span.contains(MK.col_sum(mask_cols(t))))
      st.member_subsets.push_back(t);
    else
      st.outside_subsets.push_back(t);
    if (t == comp) break;
  }
  return st;
}

std::vector<Scalar> field_dot_ready(const Matrix& MK, uint32_t subset) {
  return MK.col_sum(mask_cols(subset));
}

Scalar dot(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar acc = Scalar::zero(a.empty() ? Ring::integers() : a[0].ring());
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Kernel of the rows {columns of MK named by mask}; the ambient basis when
// the mask is empty.
std::vector<std::vector<Scalar>> orthogonal_basis(const Matrix& MK, uint32_t mask) {
  std::vector<int> cols = mask_cols(mask);
  Matrix T(MK.ring(), static_cast<int>(cols.size()), MK.rows());
  for (size_t i = 0; i < cols.size(); ++i)
    for (int j = 0; j < MK.rows(); ++j) T.at(static_cast<int>(i), j) = MK.at(j, cols[i]);
  if (cols.empty()) {
    std::vector<std::vector<Scalar>> id;
    for (int j = 0; j < MK.rows(); ++j) {
      std::vector<Scalar> e(MK.rows(), Scalar::zero(MK.ring()));
      e[j] = Scalar::one(MK.ring());
      id.push_back(std::move(e));
    }
    return id;
  }
  return kernel_basis(T);
}

std::vector<mpz_class> clear_to_integers(const std::vector<Scalar>& v) {
  mpz_class den = 1;
  for (const auto& e : v) den = lcm(den, e.mpq().get_den());
  std::vector<mpz_class> out;
  mpz_class content = 0;
  for (const auto& e : v) {
    mpz_class w = e.mpq().get_num() * (den / e.mpq().get_den());
    content = gcd(content, w);
    out.push_back(w);
  }
  if (content > 1)
    for (auto& w : out) w /= content;
  return out;
}

}  // namespace

SeparatingVectors separating_vectors(const Matrix& A) {
  const int k = A.rows(), l = A.cols();
  if (k > 10 || l > 20 || l == 0)
    fail(Err::BudgetExceeded, "separating vectors limited to 10 rows and 1..20 columns");
  Ring K;
  switch (A.ring().kind()) {
    case RingKind::Integers:
    case RingKind::Rationals:
      K = Ring::rationals();
      break;
    case RingKind::PrimeField:
      K = A.ring();
      break;
    default:
      fail(Err::UnsupportedRing, "separating vectors need integer or prime-field entries");
  }
  Matrix MK = (K == A.ring()) ? A : embed_matrix(A, K);
  const bool rational = K.kind() == RingKind::Rationals;

  SeparatingVectors out;
  out.field = K;

  std::deque<uint32_t> queue{0};
  std::map<uint32_t, bool> seen{{0, true}};
  uint64_t work = 0;
  while (!queue.empty()) {
    uint32_t mask = queue.front();
    queue.pop_front();
    work += 1ull << (l - std::popcount(mask));
    if (work > kSubsetWorkCap) fail(Err::BudgetExceeded, "state analysis too large");
    StateAnalysis st = analyse_state(MK, mask, l);
    for (uint32_t j : st.member_subsets) {
      uint32_t next = mask | j;
      if (!seen.count(next)) {
        seen[next] = true;
        queue.push_back(next);
      }
    }

    std::vector<std::vector<Scalar>> sums;
    sums.reserve(st.outside_subsets.size());
    for (uint32_t j : st.outside_subsets) sums.push_back(field_dot_ready(MK, j));

    std::vector<std::vector<Scalar>> basis = orthogonal_basis(MK, mask);
    SeparatingState rec;
    rec.mask = mask;
    if (basis.empty()) {
      if (!st.outside_subsets.empty())
        fail(Err::Internal, "sums outside a full space");  // unreachable over a field
      rec.v.assign(k, 0);
      out.states.push_back(std::move(rec));
      continue;
    }

    bool found = false;
    for (long w = 1; w <= kSweepCap && !found; ++w) {
      std::vector<Scalar> cand(k, Scalar::zero(K));
      Scalar wp = Scalar::one(K);
      Scalar ws = Scalar::from_int(K, w);
      for (const auto& b : basis) {
        wp *= ws;
        for (int i = 0; i < k; ++i) cand[i] += wp * b[i];
      }
      bool ok = true;
      for (const auto& s : sums)
        if (dot(s, cand).is_zero()) {
          ok = false;
          break;
        }
      if (!ok) continue;
      found = true;
      out.sweep_bound = std::max(out.sweep_bound, w);
      if (rational)
        rec.v = clear_to_integers(cand);
      else {
        for (const auto& e : cand) rec.v.push_back(e.mpz());
      }
      // Record the certified nonzero inner products against the emitted
      // integral vector.
      for (size_t s = 0; s < st.outside_subsets.size(); ++s) {
        mpz_class val = 0;
        std::vector<Scalar> sz = A.col_sum(mask_cols(st.outside_subsets[s]));
        for (int i = 0; i < k; ++i) val += sz[i].mpz() * rec.v[i];
        if (!rational) {
          mpz_class r;
          mpz_mod(r.get_mpz_t(), val.get_mpz_t(), K.modulus().get_mpz_t());
          val = r;
        }
        rec.nonzero_products.emplace_back(st.outside_subsets[s], val);
      }
    }
    if (!found) fail(Err::BudgetExceeded, "separating sweep exhausted");
    out.states.push_back(std::move(rec));
  }
  return out;
}

std::optional<RefutationCertificate> refute(const Matrix& A) {
  if (A.ring().kind() != RingKind::Integers)
    fail(Err::MalformedInput, "refutation certificates are built over integer matrices");
  if (columns_condition(A)) return std::nullopt;
  RefutationCertificate cert;
  cert.matrix_hash = matrix_hash(A);
  cert.cols = A.cols();
  cert.vectors = separating_vectors(A);
  mpz_class p = 2;
  while (true) {
    bool clean = true;
    for (const auto& st : cert.vectors.states)
      for (const auto& [j, val] : st.nonzero_products)
        if (val % p == 0) {
          clean = false;
          break;
        }
    if (clean) break;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  cert.prime = p;
  return cert;
}

bool validate_certificate(const Matrix& A, const RefutationCertificate& cert, std::string* why) {
  auto reject = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (A.ring().kind() != RingKind::Integers) return reject("matrix is not integral");
  if (cert.matrix_hash != matrix_hash(A)) return reject("certificate bound to another matrix");
  if (cert.cols != A.cols()) return reject("column count mismatch");
  if (cert.vectors.field.kind() != RingKind::Rationals)
    return reject("replay supports rational-field transcripts");
  if (!is_probable_prime(cert.prime)) return reject("recorded prime is composite");
  if (columns_condition(A)) return reject("columns condition actually holds");

  const int k = A.rows(), l = A.cols();
  std::map<uint32_t, const SeparatingState*> recorded;
  for (const auto& st : cert.vectors.states) {
    if (recorded.count(st.mask)) return reject("duplicate state");
    if (static_cast<int>(st.v.size()) != k) return reject("vector length mismatch");
    recorded[st.mask] = &st;
  }
  if (!recorded.count(0)) return reject("missing initial state");

  Ring Q = Ring::rationals();
  Matrix MQ = embed_matrix(A, Q);
  const uint32_t full = (l == 32 ? ~0u : (1u << l) - 1);

  std::deque<uint32_t> queue{0};
  std::map<uint32_t, bool> seen{{0, true}};
  uint64_t work = 0;
  while (!queue.empty()) {
    uint32_t mask = queue.front();
    queue.pop_front();
    auto it = recorded.find(mask);
    if (it == recorded.end()) return reject("reachable state missing from transcript");
    const SeparatingState& st = *it->second;
    work += 1ull << (l - std::popcount(mask));
    if (work > kSubsetWorkCap) return reject("transcript replay too large");

    for (int j : mask_cols(mask)) {
      mpz_class d = 0;
      for (int i = 0; i < k; ++i) d += A.at(i, j).mpz() * st.v[i];
      if (d != 0) return reject("vector not orthogonal to an absorbed column");
    }

    std::map<uint32_t, mpz_class> values;
    for (const auto& [j, val] : st.nonzero_products) {
      if (values.count(j)) return reject("duplicate subset record");
      values[j] = val;
    }

    StateAnalysis an = analyse_state(MQ, mask, l);
    if (an.member_subsets.size() + an.outside_subsets.size() + 1 !=
        (1ull << (l - std::popcount(mask))))
      return reject("subset classification incomplete");
    for (uint32_t j : an.member_subsets) {
      uint32_t next = mask | j;
      if (next == full) return reject("full column set reachable: chain completes");
      if (!seen.count(next)) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
    for (uint32_t j : an.outside_subsets) {
      auto vt = values.find(j);
      if (vt == values.end()) return reject("missing recorded product");
      mpz_class val = 0;
      std::vector<Scalar> s = A.col_sum(mask_cols(j));
      for (int i = 0; i < k; ++i) val += s[i].mpz() * st.v[i];
      if (val != vt->second) return reject("recorded product does not replay");
      if (val == 0) return reject("separating vector fails a subset");
      if (val % cert.prime == 0) return reject("prime divides a recorded product");
      values.erase(vt);
    }
    if (!values.empty()) return reject("transcript records unreachable subsets");
  }
  for (const auto& [mask, st] : recorded)
    if (!seen.count(mask)) return reject("transcript records unreachable state");
  return true;
}

}  // namespace rado
