#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace kf {

using bigint = boost::multiprecision::cpp_int;

/// Sparse integer matrix in column-major triplet form.
struct SparseIntMat {
  int64_t rows = 0;
  int64_t cols = 0;
  // cols entries: sorted (row, value), value != 0
  std::vector<std::vector<std::pair<int32_t, int64_t>>> col;
};

struct SmithSummary {
  int64_t rank = 0;
  std::vector<bigint> nontrivial_factors;  // invariant factors > 1, divisibility chain
};

/// Rank and invariant factors over the integers.
/// Sparse unit-pivot elimination first, dense SNF on the small residue.
SmithSummary smith_summary(const SparseIntMat& m);

/// Dense SNF used for small matrices (exposed for tests).
std::vector<bigint> dense_smith(std::vector<std::vector<bigint>> a);

}  // namespace kf
