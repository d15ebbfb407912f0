#include "rado/witness.hpp"

#include <algorithm>

#include "rado/error.hpp"

namespace rado {

const char* status_name(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::PR:
      return "PR-with-witness";
    case Verdict::Status::NotPR:
      return "NotPR-with-refutation";
    case Verdict::Status::Unknown:
      return "Unknown-unsupported";
  }
  return "?";
}

namespace {

bool explain(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

// Minimum q-adic valuation over the coefficients of a polynomial (or of a
// bare residue), capped at alpha; alpha means zero.
int content_valuation(const Scalar& a, const mpz_class& q, int alpha) {
  std::vector<mpz_class> vals;
  if (a.ring().kind() == RingKind::Poly) {
    for (const auto& c : a.coeffs()) vals.push_back(c.mpz());
  } else {
    vals.push_back(a.mpz());
  }
  int best = alpha;
  for (const auto& v : vals) {
    if (v == 0) continue;
    mpz_class t = v;
    int count = 0;
    while (count < best && t % q == 0) {
      t /= q;
      ++count;
    }
    best = std::min(best, count);
    if (best == 0) return 0;
  }
  return best;
}

Scalar reduce_poly_mod(const Scalar& a, const Ring& target_poly) {
  std::vector<Scalar> coeffs;
  for (const auto& c : a.coeffs())
    coeffs.push_back(Scalar::from_mpz(target_poly.base(), c.mpz()));
  return Scalar::poly(target_poly, std::move(coeffs));
}

// Decides condition (3): the ideal d_0 (d_1...d_m)^n R is infinite for all
// n >= 0, given nonzero multipliers with m >= 1.
bool power_ideals_infinite(const std::vector<Scalar>& d, const Ring& R, std::string* why) {
  if (R.is_domain() && !R.is_finite()) return true;
  if (R.is_finite())
    return explain(why, "no ideal of a finite ring is infinite, so m must be 0");
  switch (R.kind()) {
    case RingKind::Poly: {
      if (R.base().kind() != RingKind::ModRing) break;
      Scalar prod = Scalar::one(R);
      for (size_t t = 1; t < d.size(); ++t) prod = prod * d[t];
      for (const auto& [q, alpha] : factorize(R.base().modulus())) {
        Ring Sq = Ring::poly(Ring::mod_ring([&] {
          mpz_class m = 1;
          for (unsigned e = 0; e < alpha; ++e) m *= q;
          return m;
        }()));
        int a = static_cast<int>(alpha);
        if (content_valuation(reduce_poly_mod(prod, Sq), q, a) == 0 &&
            content_valuation(reduce_poly_mod(d[0], Sq), q, a) < a)
          return true;
      }
      return explain(why, "every prime component kills d_0(d_1...d_m)^n eventually");
    }
    case RingKind::ProductMod: {
      const auto& groups = R.groups();
      auto factors = factorize(R.modulus());
      for (size_t g = 0; g < groups.size(); ++g) {
        if (!groups[g].infinite) continue;
        mpz_class prod = 1;
        for (size_t t = 1; t < d.size(); ++t)
          prod = prod * d[t].values()[g] % R.modulus();
        for (const auto& [q, alpha] : factors) {
          int a = static_cast<int>(alpha);
          auto val = [&](const mpz_class& v) {
            if (v % R.modulus() == 0) return a;
            mpz_class t = v;
            int c = 0;
            while (c < a && t % q == 0) {
              t /= q;
              ++c;
            }
            return c;
          };
          if (val(prod) == 0 && val(d[0].values()[g]) < a) return true;
        }
      }
      return explain(why, "no infinite coordinate class keeps d_0(d_1...d_m)^n nonzero");
    }
    default:
      break;
  }
  return explain(why, "infinitude of power ideals undecided over " + R.to_string());
}

}  // namespace

bool verify_witness(const Matrix& A, const PartitionWitness& w, std::string* why) {
  const int l = A.cols();
  if (w.blocks.empty()) return explain(why, "no blocks");
  if (w.m + 1 != static_cast<int>(w.blocks.size()))
    return explain(why, "m does not match the number of blocks");
  std::vector<bool> seen(l, false);
  for (const auto& blk : w.blocks) {
    if (blk.empty()) return explain(why, "empty block");
    for (int idx : blk) {
      if (idx < 1 || idx > l) return explain(why, "column index out of range");
      if (seen[idx - 1]) return explain(why, "column repeated across blocks");
      seen[idx - 1] = true;
    }
  }
  for (int j = 0; j < l; ++j)
    if (!seen[j]) return explain(why, "blocks do not cover all columns");

  const bool gcc_mode = !w.multipliers.empty();
  if (gcc_mode && static_cast<int>(w.multipliers.size()) != w.m + 1)
    return explain(why, "multiplier count does not match block count");
  if (static_cast<int>(w.combinations.size()) != w.m)
    return explain(why, "one combination required per block past the first");

  Matrix M(w.ring, 0, 0);
  if (A.ring() == w.ring) {
    M = A;
  } else if (embeddable(A.ring(), w.ring)) {
    M = embed_matrix(A, w.ring);
  } else {
    return explain(why, "matrix ring does not embed into the witness ring");
  }

  if (gcc_mode)
    for (const auto& d : w.multipliers)
      if (d.is_zero() || d.ring() != w.ring)
        return explain(why, "multipliers must be nonzero elements of the witness ring");

  auto zero_based = [](const std::vector<int>& blk) {
    std::vector<int> out;
    out.reserve(blk.size());
    for (int i : blk) out.push_back(i - 1);
    return out;
  };

  std::vector<Scalar> s0 = M.col_sum(zero_based(w.blocks[0]));
  for (auto& e : s0) {
    Scalar v = gcc_mode ? w.multipliers[0] * e : e;
    if (!v.is_zero()) return explain(why, "first block sum is not annihilated");
  }

  std::vector<bool> earlier(l + 1, false);
  for (int i : w.blocks[0]) earlier[i] = true;
  for (int t = 1; t <= w.m; ++t) {
    std::vector<Scalar> st = M.col_sum(zero_based(w.blocks[t]));
    std::vector<Scalar> lhs;
    lhs.reserve(st.size());
    for (const auto& e : st) lhs.push_back(gcc_mode ? w.multipliers[t] * e : e);
    std::vector<Scalar> rhs(M.rows(), Scalar::zero(w.ring));
    for (const auto& [j, coeff] : w.combinations[t - 1]) {
      if (j < 1 || j > l || !earlier[j])
        return explain(why, "combination references a column outside earlier blocks");
      if (coeff.ring() != w.ring)
        return explain(why, "combination coefficient outside the witness ring");
      for (int i = 0; i < M.rows(); ++i) rhs[i] += coeff * M.at(i, j - 1);
    }
    for (int i = 0; i < M.rows(); ++i)
      if (!(lhs[i] == rhs[i]))
        return explain(why, "recorded combination does not reproduce block " + std::to_string(t));
    for (int i : w.blocks[t]) earlier[i] = true;
  }

  if (gcc_mode && w.m > 0 && !power_ideals_infinite(w.multipliers, w.ring, why)) return false;
  return true;
}

}  // namespace rado
