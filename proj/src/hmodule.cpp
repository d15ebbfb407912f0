#include "rado/hmodule.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "rado/error.hpp"

namespace rado {

namespace {

constexpr long long kElementBudget = 1000000;  // ideal elements enumerated

long norm_mod(long v, long p) {
  long r = v % p;
  return r < 0 ? r + p : r;
}

long inv_mod(long v, long p) {
  long t = 0, nt = 1, r = p, nr = norm_mod(v, p);
  while (nr != 0) {
    long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) fail(Err::Internal, "non-invertible residue");
  return norm_mod(t, p);
}

bool is_zero_vec(const std::vector<long>& v) {
  for (long x : v)
    if (x != 0) return false;
  return true;
}

void check_prime(long p) {
  if (p < 2 || !is_probable_prime(mpz_class(p))) fail(Err::NotPrime, "algebra base must be F_p");
}

// Flat index of phi(t_s)[d] in the unknown vector.
int unknown(int s, int d, int dm) { return s * dm + d; }

}  // namespace

FpMat FpMat::zero(long p, int rows, int cols) {
  FpMat m;
  m.p = p;
  m.rows = rows;
  m.cols = cols;
  m.a.assign(rows, std::vector<long>(cols, 0));
  return m;
}

FpMat FpMat::identity(long p, int n) {
  FpMat m = zero(p, n, n);
  for (int i = 0; i < n; ++i) m.a[i][i] = 1;
  return m;
}

std::vector<long> FpMat::apply(const std::vector<long>& v) const {
  if (static_cast<int>(v.size()) != cols) fail(Err::DimensionMismatch, "matrix-vector shape");
  std::vector<long> out(rows, 0);
  for (int i = 0; i < rows; ++i) {
    long s = 0;
    for (int j = 0; j < cols; ++j) s += a[i][j] * v[j];
    out[i] = norm_mod(s, p);
  }
  return out;
}

FpMat FpMat::times(const FpMat& o) const {
  if (cols != o.rows || p != o.p) fail(Err::DimensionMismatch, "matrix product shape");
  FpMat out = zero(p, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < o.cols; ++j)
        out.a[i][j] = norm_mod(out.a[i][j] + a[i][k] * o.a[k][j], p);
    }
  return out;
}

bool FpMat::operator==(const FpMat& o) const {
  return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
}

std::optional<std::vector<long>> fp_solve(const FpMat& A, const std::vector<long>& b) {
  if (static_cast<int>(b.size()) != A.rows) fail(Err::DimensionMismatch, "solve shape");
  const long p = A.p;
  std::vector<std::vector<long>> m(A.rows);
  for (int i = 0; i < A.rows; ++i) {
    m[i] = A.a[i];
    m[i].push_back(norm_mod(b[i], p));
  }
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < A.cols && r < A.rows; ++c) {
    int sel = -1;
    for (int i = r; i < A.rows; ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    long inv = inv_mod(m[r][c], p);
    for (long& x : m[r]) x = norm_mod(x * inv, p);
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      long f = m[i][c];
      for (int j = c; j <= A.cols; ++j) m[i][j] = norm_mod(m[i][j] - f * m[r][j], p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < A.rows; ++i)
    if (m[i][A.cols] != 0) return std::nullopt;
  std::vector<long> x(A.cols, 0);
  for (int i = 0; i < r; ++i) x[pivot_col[i]] = m[i][A.cols];
  return x;
}

FpSpan::FpSpan(long p, int dim) : p_(p), dim_(dim) {}

std::vector<long> FpSpan::reduce(std::vector<long> v, std::vector<long>* coords) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    long c = v[pivots_[i]];
    if (c == 0) continue;
    if (coords) (*coords)[i] = c;
    for (int j = 0; j < dim_; ++j) v[j] = norm_mod(v[j] - c * rows_[i][j], p_);
  }
  return v;
}

bool FpSpan::insert(std::vector<long> v) {
  if (static_cast<int>(v.size()) != dim_) fail(Err::DimensionMismatch, "span dimension");
  for (long& x : v) x = norm_mod(x, p_);
  v = reduce(std::move(v), nullptr);
  int piv = -1;
  for (int j = 0; j < dim_; ++j)
    if (v[j] != 0) {
      piv = j;
      break;
    }
  if (piv < 0) return false;
  long inv = inv_mod(v[piv], p_);
  for (long& x : v) x = norm_mod(x * inv, p_);
  for (size_t i = 0; i < rows_.size(); ++i) {
    long c = rows_[i][piv];
    if (c == 0) continue;
    for (int j = 0; j < dim_; ++j) rows_[i][j] = norm_mod(rows_[i][j] - c * v[j], p_);
  }
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool FpSpan::contains(std::vector<long> v) const {
  for (long& x : v) x = norm_mod(x, p_);
  return is_zero_vec(reduce(std::move(v), nullptr));
}

std::optional<std::vector<long>> FpSpan::coordinates(const std::vector<long>& v) const {
  std::vector<long> c(rows_.size(), 0);
  std::vector<long> w(v);
  for (long& x : w) x = norm_mod(x, p_);
  if (!is_zero_vec(reduce(std::move(w), &c))) return std::nullopt;
  return c;
}

std::vector<std::vector<long>> FpSpan::kernel() const {
  std::vector<bool> is_pivot(dim_, false);
  for (int p : pivots_) is_pivot[p] = true;
  std::vector<std::vector<long>> out;
  for (int f = 0; f < dim_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<long> x(dim_, 0);
    x[f] = 1;
    for (size_t i = 0; i < rows_.size(); ++i) x[pivots_[i]] = norm_mod(-rows_[i][f], p_);
    out.push_back(std::move(x));
  }
  return out;
}

FiniteAlgebra::FiniteAlgebra(long p, std::vector<std::string> basis,
                             std::vector<std::vector<std::vector<long>>> mul,
                             std::vector<std::vector<long>> ideal_basis,
                             std::optional<ModuleRep> module, std::vector<long> unit)
    : p_(p),
      dim_(static_cast<int>(basis.size())),
      basis_(std::move(basis)),
      mul_(std::move(mul)),
      ideal_(p, static_cast<int>(basis_.size())) {
  check_prime(p_);
  if (dim_ < 1) fail(Err::MalformedInput, "algebra needs a nonzero dimension");
  if (static_cast<int>(mul_.size()) != dim_) fail(Err::DimensionMismatch, "structure constants");
  for (auto& row : mul_) {
    if (static_cast<int>(row.size()) != dim_) fail(Err::DimensionMismatch, "structure constants");
    for (auto& v : row) {
      if (static_cast<int>(v.size()) != dim_) fail(Err::DimensionMismatch, "structure constants");
      for (long& x : v) x = norm_mod(x, p_);
    }
  }

  if (unit.empty()) {
    unit_.assign(dim_, 0);
    unit_[0] = 1;
  } else {
    if (static_cast<int>(unit.size()) != dim_) fail(Err::DimensionMismatch, "unit coordinates");
    unit_ = std::move(unit);
    for (long& x : unit_) x = norm_mod(x, p_);
  }

  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (mul_[i][j] != mul_[j][i]) fail(Err::InconsistentData, "multiplication not commutative");
  for (int j = 0; j < dim_; ++j) {
    std::vector<long> e(dim_, 0);
    e[j] = 1;
    if (mul_vec(unit_, e) != e) fail(Err::InconsistentData, "unit does not act as identity");
  }
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        std::vector<long> ek(dim_, 0), ei(dim_, 0);
        ek[k] = 1;
        ei[i] = 1;
        if (mul_vec(mul_[i][j], ek) != mul_vec(ei, mul_[j][k]))
          fail(Err::InconsistentData, "multiplication not associative");
      }

  for (auto& v : ideal_basis) {
    if (static_cast<int>(v.size()) != dim_) fail(Err::DimensionMismatch, "ideal basis");
    ideal_.insert(v);
  }
  for (const auto& r : ideal_.rows())
    for (int i = 0; i < dim_; ++i) {
      std::vector<long> ei(dim_, 0);
      ei[i] = 1;
      if (!ideal_.contains(mul_vec(ei, r)))
        fail(Err::NotAnIdeal, "subspace not closed under multiplication");
    }

  if (module) {
    explicit_module_ = true;
    module_dim_ = module->dim;
    action_ = std::move(module->action);
    if (static_cast<int>(action_.size()) != dim_)
      fail(Err::DimensionMismatch, "one action matrix per basis element required");
    for (const FpMat& m : action_)
      if (m.p != p_ || m.rows != module_dim_ || m.cols != module_dim_)
        fail(Err::DimensionMismatch, "module action shape");
    FpMat unit_act = action_of(unit_);
    if (!(unit_act == FpMat::identity(p_, module_dim_)))
      fail(Err::InconsistentData, "unit does not act as identity on the module");
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j) {
        FpMat lhs = action_[i].times(action_[j]);
        FpMat rhs = FpMat::zero(p_, module_dim_, module_dim_);
        for (int m = 0; m < dim_; ++m) {
          if (mul_[i][j][m] == 0) continue;
          for (int r = 0; r < module_dim_; ++r)
            for (int c = 0; c < module_dim_; ++c)
              rhs.a[r][c] = norm_mod(rhs.a[r][c] + mul_[i][j][m] * action_[m].a[r][c], p_);
        }
        if (!(lhs == rhs)) fail(Err::InconsistentData, "module action is not a representation");
      }
  } else {
    module_dim_ = dim_;
    action_.reserve(dim_);
    for (int i = 0; i < dim_; ++i) {
      FpMat m = FpMat::zero(p_, dim_, dim_);
      for (int j = 0; j < dim_; ++j)
        for (int r = 0; r < dim_; ++r) m.a[r][j] = mul_[i][j][r];
      action_.push_back(std::move(m));
    }
  }
}

std::vector<long> FiniteAlgebra::mul_vec(const std::vector<long>& u,
                                         const std::vector<long>& v) const {
  if (static_cast<int>(u.size()) != dim_ || static_cast<int>(v.size()) != dim_)
    fail(Err::DimensionMismatch, "element coordinates");
  std::vector<long> out(dim_, 0);
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (v[j] == 0) continue;
      long f = norm_mod(u[i] * v[j], p_);
      for (int k = 0; k < dim_; ++k) out[k] = norm_mod(out[k] + f * mul_[i][j][k], p_);
    }
  }
  return out;
}

FpMat FiniteAlgebra::action_of(const std::vector<long>& r) const {
  if (static_cast<int>(r.size()) != dim_) fail(Err::DimensionMismatch, "element coordinates");
  FpMat out = FpMat::zero(p_, module_dim_, module_dim_);
  for (int i = 0; i < dim_; ++i) {
    if (r[i] == 0) continue;
    for (int a = 0; a < module_dim_; ++a)
      for (int b = 0; b < module_dim_; ++b)
        out.a[a][b] = norm_mod(out.a[a][b] + r[i] * action_[i].a[a][b], p_);
  }
  return out;
}

FiniteAlgebra FiniteAlgebra::with_ideal(std::vector<std::vector<long>> ideal_basis) const {
  std::optional<ModuleRep> module;
  if (explicit_module_) module = ModuleRep{module_dim_, action_};
  return FiniteAlgebra(p_, basis_, mul_, std::move(ideal_basis), std::move(module), unit_);
}

std::vector<std::vector<long>> FiniteAlgebra::ideal_generated_by(
    const std::vector<std::vector<long>>& gens) const {
  FpSpan span(p_, dim_);
  std::vector<std::vector<long>> queue;
  for (const auto& g : gens) {
    std::vector<long> v(g);
    if (static_cast<int>(v.size()) != dim_) fail(Err::DimensionMismatch, "generator coordinates");
    if (span.insert(v)) queue.push_back(std::move(v));
  }
  while (!queue.empty()) {
    std::vector<long> v = std::move(queue.back());
    queue.pop_back();
    for (int i = 0; i < dim_; ++i) {
      std::vector<long> ei(dim_, 0);
      ei[i] = 1;
      std::vector<long> w = mul_vec(ei, v);
      if (span.insert(w)) queue.push_back(std::move(w));
    }
  }
  return span.rows();
}

namespace {

long long ideal_size_budget(long p, int di) {
  long long size = 1;
  for (int i = 0; i < di; ++i) {
    size *= p;
    if (size > kElementBudget)
      fail(Err::BudgetExceeded, "ideal too large for the per-element pass");
  }
  return size;
}

// Advances c through F_p^k in odometer order; returns false after the last.
bool next_tuple(std::vector<long>& c, long p) {
  int pos = static_cast<int>(c.size()) - 1;
  while (pos >= 0 && c[pos] == p - 1) c[pos--] = 0;
  if (pos < 0) return false;
  ++c[pos];
  return true;
}

bool first_nonzero_is_one(const std::vector<long>& c) {
  for (long x : c) {
    if (x == 0) continue;
    return x == 1;
  }
  return false;  // zero tuple
}

struct HInternals {
  int n = 0;         // unknowns: ideal_dim * module_dim
  int dim_hom = 0;
  FpSpan constraints;  // linearity + per-element conditions
  FpSpan bspan;        // principal maps
  std::vector<std::vector<long>> zbasis;
  std::vector<FpMat> acts;  // action of each ideal basis element
};

std::vector<long> ideal_element(const FiniteAlgebra& alg, const std::vector<long>& c) {
  const auto& basis = alg.ideal();
  std::vector<long> t(alg.dim(), 0);
  for (size_t s = 0; s < basis.size(); ++s) {
    if (c[s] == 0) continue;
    for (int j = 0; j < alg.dim(); ++j) t[j] = norm_mod(t[j] + c[s] * basis[s][j], alg.p());
  }
  return t;
}

HInternals analyse_h(const FiniteAlgebra& alg) {
  const long p = alg.p();
  const int D = alg.dim();
  const int di = alg.ideal_dim();
  const int dm = alg.module_dim();
  const int n = di * dm;
  HInternals h{n, 0, FpSpan(p, n), FpSpan(p, n), {}, {}};
  if (di == 0) return h;
  ideal_size_budget(p, di);

  const auto& tbasis = alg.ideal();
  for (int s = 0; s < di; ++s) h.acts.push_back(alg.action_of(tbasis[s]));

  FpSpan ispan(p, D);
  for (const auto& r : tbasis) ispan.insert(r);

  // R-linearity: phi(e_r t_s) = e_r phi(t_s).
  for (int r = 0; r < D; ++r) {
    std::vector<long> er(D, 0);
    er[r] = 1;
    FpMat act_r = alg.action_of(er);
    for (int s = 0; s < di; ++s) {
      std::vector<long> w = alg.mul_vec(er, tbasis[s]);
      auto coords = ispan.coordinates(w);
      if (!coords) fail(Err::Internal, "ideal closure lost");
      for (int d = 0; d < dm; ++d) {
        std::vector<long> row(n, 0);
        for (int sigma = 0; sigma < di; ++sigma)
          row[unknown(sigma, d, dm)] = norm_mod(row[unknown(sigma, d, dm)] + (*coords)[sigma], p);
        for (int d2 = 0; d2 < dm; ++d2)
          row[unknown(s, d2, dm)] = norm_mod(row[unknown(s, d2, dm)] - act_r.a[d][d2], p);
        h.constraints.insert(std::move(row));
      }
    }
  }
  h.dim_hom = n - h.constraints.rank();

  // Per-element conditions phi(t) in tM; scalar multiples share a condition.
  std::vector<long> c(di, 0);
  do {
    if (!first_nonzero_is_one(c)) continue;
    std::vector<long> t = ideal_element(alg, c);
    FpMat act_t = alg.action_of(t);
    FpSpan colspace(p, dm);
    for (int j = 0; j < dm; ++j) {
      std::vector<long> col(dm);
      for (int i = 0; i < dm; ++i) col[i] = act_t.a[i][j];
      colspace.insert(std::move(col));
    }
    for (const auto& null_vec : colspace.kernel()) {
      std::vector<long> row(n, 0);
      for (int s = 0; s < di; ++s) {
        if (c[s] == 0) continue;
        for (int d = 0; d < dm; ++d)
          row[unknown(s, d, dm)] = norm_mod(row[unknown(s, d, dm)] + c[s] * null_vec[d], p);
      }
      h.constraints.insert(std::move(row));
    }
    if (h.constraints.rank() == n) break;  // Z is already zero
  } while (next_tuple(c, p));

  h.zbasis = h.constraints.kernel();

  for (int d0 = 0; d0 < dm; ++d0) {
    std::vector<long> v(n, 0);
    for (int s = 0; s < di; ++s)
      for (int d = 0; d < dm; ++d) v[unknown(s, d, dm)] = h.acts[s].a[d][d0];
    for (const auto& crow : h.constraints.rows()) {
      long dot = 0;
      for (int i = 0; i < n; ++i) dot += crow[i] * v[i];
      if (norm_mod(dot, p) != 0) fail(Err::Internal, "principal map escapes Z");
    }
    h.bspan.insert(std::move(v));
  }
  return h;
}

std::vector<std::vector<long>> unpack_phi(const std::vector<long>& v, int di, int dm) {
  std::vector<std::vector<long>> phi(di, std::vector<long>(dm));
  for (int s = 0; s < di; ++s)
    for (int d = 0; d < dm; ++d) phi[s][d] = v[unknown(s, d, dm)];
  return phi;
}

void check_phi_shape(const FiniteAlgebra& alg, const std::vector<std::vector<long>>& phi) {
  if (static_cast<int>(phi.size()) != alg.ideal_dim())
    fail(Err::DimensionMismatch, "one value per ideal basis element required");
  for (const auto& v : phi)
    if (static_cast<int>(v.size()) != alg.module_dim())
      fail(Err::DimensionMismatch, "values must carry module coordinates");
}

}  // namespace

HModuleReport compute_H(const FiniteAlgebra& alg) {
  HModuleReport rep;
  if (alg.ideal_dim() == 0) return rep;
  HInternals h = analyse_h(alg);
  rep.dim_hom = h.dim_hom;
  rep.dim_z = static_cast<int>(h.zbasis.size());
  rep.dim_b = h.bspan.rank();
  rep.dim_h = rep.dim_z - rep.dim_b;
  if (rep.dim_h < 0 || rep.dim_z > rep.dim_hom) fail(Err::Internal, "H dimension bookkeeping");
  if (rep.dim_h > 0) {
    FpSpan extended(alg.p(), h.n);
    for (const auto& r : h.bspan.rows()) {
      std::vector<long> copy(r);
      extended.insert(std::move(copy));
    }
    for (const auto& z : h.zbasis) {
      std::vector<long> copy(z);
      if (extended.insert(std::move(copy))) {
        rep.representative = unpack_phi(z, alg.ideal_dim(), alg.module_dim());
        break;
      }
    }
    if (rep.representative.empty()) fail(Err::Internal, "missing nonprincipal representative");
    if (!verify_homomorphism(alg, rep.representative) || !verify_in_z(alg, rep.representative) ||
        principal_witness(alg, rep.representative))
      fail(Err::Internal, "representative failed re-verification");
  }
  return rep;
}

bool verify_homomorphism(const FiniteAlgebra& alg, const std::vector<std::vector<long>>& phi) {
  check_phi_shape(alg, phi);
  const int D = alg.dim();
  const int di = alg.ideal_dim();
  const int dm = alg.module_dim();
  FpSpan ispan(alg.p(), D);
  for (const auto& r : alg.ideal()) ispan.insert(r);
  for (int r = 0; r < D; ++r) {
    std::vector<long> er(D, 0);
    er[r] = 1;
    FpMat act_r = alg.action_of(er);
    for (int s = 0; s < di; ++s) {
      auto coords = ispan.coordinates(alg.mul_vec(er, alg.ideal()[s]));
      if (!coords) return false;
      std::vector<long> lhs(dm, 0);
      for (int sigma = 0; sigma < di; ++sigma)
        for (int d = 0; d < dm; ++d)
          lhs[d] = norm_mod(lhs[d] + (*coords)[sigma] * phi[sigma][d], alg.p());
      if (lhs != act_r.apply(phi[s])) return false;
    }
  }
  return true;
}

bool verify_in_z(const FiniteAlgebra& alg, const std::vector<std::vector<long>>& phi) {
  check_phi_shape(alg, phi);
  const int di = alg.ideal_dim();
  const int dm = alg.module_dim();
  if (di == 0) return true;
  ideal_size_budget(alg.p(), di);
  std::vector<long> c(di, 0);
  do {
    std::vector<long> t = ideal_element(alg, c);
    FpMat act_t = alg.action_of(t);
    std::vector<long> value(dm, 0);
    for (int s = 0; s < di; ++s)
      for (int d = 0; d < dm; ++d) value[d] = norm_mod(value[d] + c[s] * phi[s][d], alg.p());
    if (!fp_solve(act_t, value)) return false;
  } while (next_tuple(c, alg.p()));
  return true;
}

std::optional<std::vector<long>> principal_witness(const FiniteAlgebra& alg,
                                                   const std::vector<std::vector<long>>& phi) {
  check_phi_shape(alg, phi);
  const int di = alg.ideal_dim();
  const int dm = alg.module_dim();
  FpMat stacked = FpMat::zero(alg.p(), di * dm, dm);
  std::vector<long> rhs(static_cast<size_t>(di) * dm);
  for (int s = 0; s < di; ++s) {
    FpMat act = alg.action_of(alg.ideal()[s]);
    for (int d = 0; d < dm; ++d) {
      stacked.a[unknown(s, d, dm)] = act.a[d];
      rhs[unknown(s, d, dm)] = phi[s][d];
    }
  }
  return fp_solve(stacked, rhs);
}

namespace {

enum class Pair { IntInt, IntMod, ModMod, PolyPoly };

Pair classify_pair(const Ring& r, const Ring& m) {
  const bool m_mod = m.kind() == RingKind::ModRing || m.kind() == RingKind::PrimeField;
  if (r.kind() == RingKind::Integers) {
    if (m.kind() == RingKind::Integers) return Pair::IntInt;
    if (m_mod) return Pair::IntMod;
  }
  if ((r.kind() == RingKind::ModRing || r.kind() == RingKind::PrimeField) && r == m)
    return Pair::ModMod;
  if (r.kind() == RingKind::Poly && r.base().kind() == RingKind::PrimeField && r == m)
    return Pair::PolyPoly;
  fail(Err::UnsupportedPair, "unsupported ring/module pair: " + r.to_string() + " acting on " +
                                 m.to_string());
}

// All solutions of a x = b (mod n) form r + (n/gcd) Z; merges such
// progressions across rows.
struct Progression {
  mpz_class r = 0;
  mpz_class q = 1;
};

bool merge_congruence(Progression& acc, const mpz_class& a, const mpz_class& b,
                      const mpz_class& n) {
  mpz_class g = gcd(a, n);
  if (g == 0) return b == 0;  // n = 0 cannot happen (n >= 2)
  if (b % g != 0) return false;
  mpz_class step = n / g;
  mpz_class r2 = 0;
  if (step != 1) {
    mpz_class ai = (a / g) % step, bi = (b / g) % step, inv;
    if (mpz_invert(inv.get_mpz_t(), ai.get_mpz_t(), step.get_mpz_t()) == 0) return false;
    r2 = (bi * inv) % step;
    if (r2 < 0) r2 += step;
  }
  mpz_class d = gcd(acc.q, step);
  mpz_class diff = r2 - acc.r;
  if (diff % d != 0) return false;
  mpz_class l = acc.q / d * step;
  mpz_class step_d = step / d, inv;
  mpz_class k = 0;
  if (step_d != 1) {
    mpz_class qd = (acc.q / d) % step_d;
    if (mpz_invert(inv.get_mpz_t(), qd.get_mpz_t(), step_d.get_mpz_t()) == 0) return false;
    k = ((diff / d) % step_d * inv) % step_d;
    if (k < 0) k += step_d;
  }
  acc.r = (acc.r + k * acc.q) % l;
  if (acc.r < 0) acc.r += l;
  acc.q = l;
  return true;
}

std::vector<Scalar> row_sums(const Matrix& A) {
  std::vector<Scalar> out;
  out.reserve(A.rows());
  for (int i = 0; i < A.rows(); ++i) {
    Scalar s = Scalar::zero(A.ring());
    for (int j = 0; j < A.cols(); ++j) s += A.at(i, j);
    out.push_back(std::move(s));
  }
  return out;
}

// Single-equation solvability of a m = b over the classified pair.
std::optional<Scalar> solve_single(Pair pair, const Scalar& a, const Scalar& b, const Ring& m) {
  switch (pair) {
    case Pair::IntInt:
    case Pair::PolyPoly: {
      if (a.is_zero()) {
        if (b.is_zero()) return Scalar::zero(m);
        return std::nullopt;
      }
      return Scalar::div_exact(b, a);
    }
    case Pair::IntMod:
    case Pair::ModMod: {
      const mpz_class& n = m.modulus();
      Progression acc;
      if (!merge_congruence(acc, a.mpz() % n, b.mpz(), n)) return std::nullopt;
      return Scalar::from_mpz(m, acc.r);
    }
  }
  fail(Err::Internal, "unreachable");
}

}  // namespace

std::optional<Scalar> constant_solution(const Matrix& A, const std::vector<Scalar>& b) {
  if (static_cast<int>(b.size()) != A.rows())
    fail(Err::DimensionMismatch, "one right-hand side entry per row required");
  if (A.rows() < 1 || A.cols() < 1) fail(Err::MalformedInput, "empty system");
  const Ring& M = b[0].ring();
  for (const Scalar& v : b)
    if (!(v.ring() == M)) fail(Err::MalformedInput, "right-hand side mixes rings");
  Pair pair = classify_pair(A.ring(), M);
  std::vector<Scalar> sums = row_sums(A);

  switch (pair) {
    case Pair::IntInt:
    case Pair::PolyPoly: {
      std::optional<Scalar> pinned;
      for (int i = 0; i < A.rows(); ++i) {
        if (sums[i].is_zero()) {
          if (!b[i].is_zero()) return std::nullopt;
          continue;
        }
        std::optional<Scalar> mi = Scalar::div_exact(b[i], sums[i]);
        if (!mi) return std::nullopt;
        if (pinned && !(*pinned == *mi)) return std::nullopt;
        pinned = std::move(mi);
      }
      return pinned ? pinned : std::optional<Scalar>(Scalar::zero(M));
    }
    case Pair::IntMod:
    case Pair::ModMod: {
      const mpz_class& n = M.modulus();
      Progression acc;
      for (int i = 0; i < A.rows(); ++i)
        if (!merge_congruence(acc, sums[i].mpz() % n, b[i].mpz(), n)) return std::nullopt;
      return Scalar::from_mpz(M, acc.r);
    }
  }
  fail(Err::Internal, "unreachable");
}

std::optional<std::vector<long>> constant_solution(const FiniteAlgebra& alg,
                                                   const std::vector<std::vector<long>>& sums,
                                                   const std::vector<std::vector<long>>& b) {
  if (sums.empty() || sums.size() != b.size())
    fail(Err::DimensionMismatch, "one row sum per right-hand side entry required");
  const int k = static_cast<int>(sums.size());
  const int dm = alg.module_dim();
  FpMat stacked = FpMat::zero(alg.p(), k * dm, dm);
  std::vector<long> rhs(static_cast<size_t>(k) * dm);
  for (int i = 0; i < k; ++i) {
    FpMat act = alg.action_of(sums[i]);
    if (static_cast<int>(b[i].size()) != dm)
      fail(Err::DimensionMismatch, "right-hand side must carry module coordinates");
    for (int d = 0; d < dm; ++d) {
      stacked.a[static_cast<size_t>(i) * dm + d] = act.a[d];
      rhs[static_cast<size_t>(i) * dm + d] = norm_mod(b[i][d], alg.p());
    }
  }
  return fp_solve(stacked, rhs);
}

namespace {

// Attaches the residue-colouring refutation for the first row combination
// r = e_i or e_i - e_j whose single equation (r A) m = r b is unsolvable with
// a finite quotient M/(r a)M.
void attach_refutation(Verdict& v, Pair pair, const std::vector<Scalar>& sums,
                       const std::vector<Scalar>& b, const Ring& M) {
  const int k = static_cast<int>(sums.size());
  auto finite_quotient = [&](const Scalar& a) {
    if (pair == Pair::IntMod || pair == Pair::ModMod) return true;
    return !a.is_zero();
  };
  auto consider = [&](const Scalar& a, const Scalar& bb, nlohmann::json combo) {
    if (solve_single(pair, a, bb, M) || !finite_quotient(a)) return false;
    Scalar in_module = pair == Pair::IntMod ? Scalar::from_mpz(M, a.mpz()) : a;
    v.detail["colouring"] = {{"kind", "residue"}, {"a", in_module.to_string()}};
    v.detail["combination"] = std::move(combo);
    return true;
  };
  for (int i = 0; i < k; ++i)
    if (consider(sums[i], b[i], nlohmann::json::array({nlohmann::json::array({i + 1, 1})})))
      return;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if (consider(sums[i] - sums[j], b[i] - b[j],
                   nlohmann::json::array({nlohmann::json::array({i + 1, 1}),
                                          nlohmann::json::array({j + 1, -1})})))
        return;
    }
}

}  // namespace

Verdict pr_nonhom(const Matrix& A, const std::vector<Scalar>& b) {
  if (static_cast<int>(b.size()) != A.rows())
    fail(Err::DimensionMismatch, "one right-hand side entry per row required");
  if (A.rows() < 1 || A.cols() < 1) fail(Err::MalformedInput, "empty system");
  bool nonzero = false;
  for (const Scalar& v : b) nonzero = nonzero || !v.is_zero();
  if (!nonzero) fail(Err::MalformedInput, "nonhomogeneous decision needs b != 0");
  const Ring& M = b[0].ring();
  Pair pair = classify_pair(A.ring(), M);

  Verdict v;
  v.ring = A.ring();
  v.matrix_hash = matrix_hash(A);
  v.detail["module"] = M.to_string();
  if (A.rows() == 1) {
    v.detail["vanishing"] = "single-equation";
  } else {
    switch (pair) {
      case Pair::IntInt:
        v.detail["vanishing"] = "domain-torsion-free";
        break;
      case Pair::IntMod:
      case Pair::PolyPoly:
        v.detail["vanishing"] = "dedekind-domain";
        break;
      case Pair::ModMod:
        v.detail["vanishing"] = "principal-ideal";
        break;
    }
  }

  std::optional<Scalar> m = constant_solution(A, b);
  if (m) {
    v.status = Verdict::Status::PR;
    v.detail["constant"] = m->to_string();
  } else {
    v.status = Verdict::Status::NotPR;
    v.detail["reason"] = "no-constant-solution";
    attach_refutation(v, pair, row_sums(A), b, M);
  }
  return v;
}

Verdict pr_nonhom(const FiniteAlgebra& alg,
                  const std::vector<std::vector<std::vector<long>>>& rows,
                  const std::vector<std::vector<long>>& b) {
  if (rows.empty() || rows.size() != b.size())
    fail(Err::DimensionMismatch, "one right-hand side entry per row required");
  const int k = static_cast<int>(rows.size());
  const int dm = alg.module_dim();
  bool nonzero = false;
  for (const auto& entry : b) {
    if (static_cast<int>(entry.size()) != dm)
      fail(Err::DimensionMismatch, "right-hand side must carry module coordinates");
    nonzero = nonzero || !is_zero_vec(entry);
  }
  if (!nonzero) fail(Err::MalformedInput, "nonhomogeneous decision needs b != 0");

  std::vector<std::vector<long>> sums;
  for (const auto& row : rows) {
    if (row.empty()) fail(Err::MalformedInput, "empty system");
    std::vector<long> s(alg.dim(), 0);
    for (const auto& entry : row) {
      if (static_cast<int>(entry.size()) != alg.dim())
        fail(Err::DimensionMismatch, "entries must carry algebra coordinates");
      for (int i = 0; i < alg.dim(); ++i) s[i] = norm_mod(s[i] + entry[i], alg.p());
    }
    sums.push_back(std::move(s));
  }

  Verdict v;
  v.ring = Ring::prime_field(alg.p());
  v.detail["algebra_dim"] = alg.dim();
  v.detail["module_dim"] = dm;
  if (k == 1) {
    v.detail["vanishing"] = "single-equation";
  } else {
    FiniteAlgebra scoped = alg.with_ideal(alg.ideal_generated_by(sums));
    HModuleReport h = compute_H(scoped);
    if (h.dim_h != 0)
      fail(Err::HNotKnownZero,
           "H does not vanish for the ideal generated by the row sums; decision refused");
    v.detail["vanishing"] = "computed-zero";
  }

  std::optional<std::vector<long>> m = constant_solution(alg, sums, b);
  if (m) {
    v.status = Verdict::Status::PR;
    v.detail["constant"] = *m;
  } else {
    v.status = Verdict::Status::NotPR;
    v.detail["reason"] = "no-constant-solution";
    v.detail["colouring"] = {{"kind", "module-cosets"}};
  }
  return v;
}

FunctorialityReport h_functoriality_check(const FiniteAlgebra& alg, const ModuleRep& target,
                                          const FpMat& f) {
  const long p = alg.p();
  const int dm = alg.module_dim();
  const int dn = target.dim;
  if (f.p != p || f.rows != dn || f.cols != dm)
    fail(Err::InconsistentData, "map shape does not match the modules");
  std::vector<std::vector<long>> ideal_rows;
  for (const auto& r : alg.ideal()) ideal_rows.push_back(r);
  FiniteAlgebra with_target(alg.p(), alg.basis(), alg.mul(), ideal_rows, target, alg.unit());
  for (int i = 0; i < alg.dim(); ++i)
    if (!(f.times(alg.basis_action(i)) == with_target.basis_action(i).times(f)))
      fail(Err::InconsistentData, "map does not commute with the action");

  const int di = alg.ideal_dim();
  HInternals hm = analyse_h(alg);
  HInternals hn = analyse_h(with_target);

  FunctorialityReport rep;
  rep.z_mapped_into_z = true;
  for (const auto& z : hm.zbasis) {
    std::vector<long> image(static_cast<size_t>(di) * dn, 0);
    for (int s = 0; s < di; ++s) {
      std::vector<long> phi_s(dm);
      for (int d = 0; d < dm; ++d) phi_s[d] = z[unknown(s, d, dm)];
      std::vector<long> mapped = f.apply(phi_s);
      for (int d = 0; d < dn; ++d) image[unknown(s, d, dn)] = mapped[d];
    }
    for (const auto& crow : hn.constraints.rows()) {
      long dot = 0;
      for (size_t i = 0; i < image.size(); ++i) dot += crow[i] * image[i];
      if (norm_mod(dot, p) != 0) rep.z_mapped_into_z = false;
    }
  }
  rep.b_mapped_into_b = true;
  for (const auto& bvec : hm.bspan.rows()) {
    std::vector<long> image(static_cast<size_t>(di) * dn, 0);
    for (int s = 0; s < di; ++s) {
      std::vector<long> phi_s(dm);
      for (int d = 0; d < dm; ++d) phi_s[d] = bvec[unknown(s, d, dm)];
      std::vector<long> mapped = f.apply(phi_s);
      for (int d = 0; d < dn; ++d) image[unknown(s, d, dn)] = mapped[d];
    }
    if (!hn.bspan.contains(image)) rep.b_mapped_into_b = false;
  }

  // Annihilator base change: working over R/ann(M) must not change dim H.
  const int D = alg.dim();
  FpSpan ann_constraints(p, D);
  for (int d = 0; d < dm; ++d)
    for (int d2 = 0; d2 < dm; ++d2) {
      std::vector<long> row(D);
      for (int i = 0; i < D; ++i) row[i] = alg.basis_action(i).a[d][d2];
      ann_constraints.insert(std::move(row));
    }
  FpSpan jspan(p, D);
  for (const auto& j : ann_constraints.kernel()) {
    std::vector<long> copy(j);
    jspan.insert(std::move(copy));
  }
  for (const auto& jrow : jspan.rows())
    for (int i = 0; i < D; ++i) {
      std::vector<long> ei(D, 0);
      ei[i] = 1;
      std::vector<long> w = alg.mul_vec(ei, jrow);
      if (!jspan.contains(w)) fail(Err::Internal, "annihilator is not an ideal");
    }

  std::vector<int> qcols;
  {
    std::vector<bool> piv(D, false);
    for (const auto& r : jspan.rows()) {
      int c = 0;
      while (c < D && r[c] == 0) ++c;
      piv[c] = true;
    }
    for (int c = 0; c < D; ++c)
      if (!piv[c]) qcols.push_back(c);
  }
  const int dq = static_cast<int>(qcols.size());
  auto project = [&](const std::vector<long>& v) {
    std::vector<long> reduced(v);
    for (long& x : reduced) x = norm_mod(x, p);
    // subtract the J-part
    for (size_t i = 0; i < jspan.rows().size(); ++i) {
      int piv = 0;
      while (piv < D && jspan.rows()[i][piv] == 0) ++piv;
      long c2 = reduced[piv];
      if (c2 == 0) continue;
      for (int j2 = 0; j2 < D; ++j2)
        reduced[j2] = norm_mod(reduced[j2] - c2 * jspan.rows()[i][j2], p);
    }
    std::vector<long> out(dq);
    for (int i = 0; i < dq; ++i) out[i] = reduced[qcols[i]];
    return out;
  };
  auto lift = [&](const std::vector<long>& v) {
    std::vector<long> out(D, 0);
    for (int i = 0; i < dq; ++i) out[qcols[i]] = v[i];
    return out;
  };

  std::vector<std::string> qlabels;
  for (int c : qcols) qlabels.push_back(alg.basis()[c]);
  std::vector<std::vector<std::vector<long>>> qmul(
      dq, std::vector<std::vector<long>>(dq, std::vector<long>(dq, 0)));
  for (int i = 0; i < dq; ++i)
    for (int j = 0; j < dq; ++j) {
      std::vector<long> ei(D, 0), ej(D, 0);
      ei[qcols[i]] = 1;
      ej[qcols[j]] = 1;
      qmul[i][j] = project(alg.mul_vec(ei, ej));
    }
  std::vector<std::vector<long>> qideal;
  for (const auto& r : alg.ideal()) qideal.push_back(project(r));
  std::vector<FpMat> qaction;
  for (int i = 0; i < dq; ++i) {
    std::vector<long> e(dq, 0);
    e[i] = 1;
    qaction.push_back(alg.action_of(lift(e)));
  }
  FiniteAlgebra quotient(p, qlabels, qmul, qideal, ModuleRep{dm, qaction}, project(alg.unit()));

  rep.dim_h_module = compute_H(alg).dim_h;
  rep.dim_h_base_change = compute_H(quotient).dim_h;
  rep.ann_base_change_equal = rep.dim_h_module == rep.dim_h_base_change;
  return rep;
}

FiniteAlgebra obstruction_algebra(long p) {
  const int D = 10;
  std::vector<std::string> labels = {"1", "x", "y", "z", "w", "x2", "xy", "y2", "xz", "xw"};
  std::vector<std::vector<std::vector<long>>> mul(
      D, std::vector<std::vector<long>>(D, std::vector<long>(D, 0)));
  auto set = [&](int i, int j, int k) {
    mul[i][j][k] = 1;
    mul[j][i][k] = 1;
  };
  for (int j = 0; j < D; ++j) set(0, j, j);
  set(1, 1, 5);  // x*x = x2
  set(1, 2, 6);  // x*y = xy
  set(1, 3, 8);  // x*z = xz
  set(1, 4, 9);  // x*w = xw
  set(2, 2, 7);  // y*y = y2
  set(2, 3, 9);  // y*z = xw
  std::vector<std::vector<long>> ideal;
  for (int idx : {1, 2, 5, 6, 7, 8, 9}) {
    std::vector<long> e(D, 0);
    e[idx] = 1;
    ideal.push_back(std::move(e));
  }
  return FiniteAlgebra(p, std::move(labels), std::move(mul), std::move(ideal));
}

FiniteAlgebra truncated_cover_algebra(long p) {
  // All monomials of degree <= 2 in four variables.
  struct Mono {
    int e[4];
  };
  std::vector<Mono> monos;
  std::vector<std::string> labels;
  const char* names = "xyzw";
  std::map<std::array<int, 4>, int> index;
  auto add = [&](std::array<int, 4> e, std::string label) {
    index[e] = static_cast<int>(monos.size());
    monos.push_back(Mono{{e[0], e[1], e[2], e[3]}});
    labels.push_back(std::move(label));
  };
  add({0, 0, 0, 0}, "1");
  for (int i = 0; i < 4; ++i) {
    std::array<int, 4> e{0, 0, 0, 0};
    e[i] = 1;
    add(e, std::string(1, names[i]));
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      std::array<int, 4> e{0, 0, 0, 0};
      e[i] += 1;
      e[j] += 1;
      add(e, i == j ? std::string(1, names[i]) + "2"
                    : std::string(1, names[i]) + std::string(1, names[j]));
    }
  const int D = static_cast<int>(monos.size());  // 15

  std::vector<std::vector<std::vector<long>>> mul(
      D, std::vector<std::vector<long>>(D, std::vector<long>(D, 0)));
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      std::array<int, 4> e;
      int total = 0;
      for (int v = 0; v < 4; ++v) {
        e[v] = monos[i].e[v] + monos[j].e[v];
        total += e[v];
      }
      if (total <= 2) mul[i][j][index.at(e)] = 1;
    }

  // Ideal (x, y): every monomial divisible by x or y.
  std::vector<std::vector<long>> ideal;
  for (int i = 0; i < D; ++i) {
    if (monos[i].e[0] == 0 && monos[i].e[1] == 0) continue;
    std::vector<long> e(D, 0);
    e[i] = 1;
    ideal.push_back(std::move(e));
  }

  // The 10-dimensional quotient as a module, through the projection that
  // kills z2, zw, w2, yw and folds yz onto xw.
  FiniteAlgebra small = obstruction_algebra(p);
  auto small_index = [&](const std::string& label) {
    const auto& bl = small.basis();
    for (size_t i = 0; i < bl.size(); ++i)
      if (bl[i] == label) return static_cast<int>(i);
    fail(Err::Internal, "missing quotient basis label");
  };
  std::vector<std::vector<long>> proj(D, std::vector<long>(small.dim(), 0));
  for (int i = 0; i < D; ++i) {
    std::string label = labels[i];
    if (label == "z2" || label == "zw" || label == "w2" || label == "yw") continue;
    if (label == "yz") label = "xw";
    proj[i][small_index(label)] = 1;
  }
  std::vector<FpMat> action;
  for (int i = 0; i < D; ++i) action.push_back(small.action_of(proj[i]));

  return FiniteAlgebra(p, std::move(labels), std::move(mul), std::move(ideal),
                       ModuleRep{small.dim(), std::move(action)});
}

}  // namespace rado
