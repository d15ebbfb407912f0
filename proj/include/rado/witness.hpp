#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rado/matrix.hpp"

namespace rado {

// Ordered column partition I_0,...,I_m certifying the (generalised) columns
// condition. Column indices are 1-based. For t >= 1, combinations[t-1] lists
// (column index j, coefficient r_j) with j in an earlier block, such that
//   d_t * sum_{i in I_t} c_i = sum_j r_j * c_j
// exactly over `ring`. multipliers holds d_0..d_m and is empty in the plain
// columns-condition case (where d_t = 1 and coefficients live in the
// fraction field).
struct PartitionWitness {
  int m = 0;
  std::vector<std::vector<int>> blocks;
  std::vector<Scalar> multipliers;
  std::vector<std::vector<std::pair<int, Scalar>>> combinations;
  Ring ring = Ring::integers();
};

// Re-verifies a witness against A by direct substitution: block partition
// shape, zero sum (or d_0-annihilated sum) of I_0, each recorded combination,
// and, for multiplier witnesses with m > 0, that the ideal
// d_0(d_1...d_m)^n R is infinite for all n (decided per ring). A is embedded
// into w.ring when the rings differ.
bool verify_witness(const Matrix& A, const PartitionWitness& w, std::string* why = nullptr);

struct Verdict {
  enum class Status { PR, NotPR, Unknown };
  Status status = Status::Unknown;
  Ring ring = Ring::integers();
  uint64_t matrix_hash = 0;
  std::optional<PartitionWitness> witness;  // PR evidence when one exists
  nlohmann::json detail;                    // operation-specific scalars
};

const char* status_name(Verdict::Status s);

}  // namespace rado
