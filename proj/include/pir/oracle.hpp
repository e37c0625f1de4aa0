// Copyright 2026 The codedpir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIR_ORACLE_HPP_
#define PIR_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "pir/pir_code.hpp"

namespace pir {

/// Exact maximum number of pairwise-disjoint sets, branch-and-bound with a
/// greedy incumbent. Sets are bit masks; returns the chosen masks.
struct PackResult {
    size_t count = 0;
    std::vector<std::uint64_t> chosen;
};
PackResult max_disjoint_packing(std::vector<std::uint64_t> sets);

/// Exhaustive certification oracle: the largest number of pairwise-disjoint
/// column subsets of g that each combine (coefficient-weighted for q > 2)
/// to e_i, together with witnesses attaining it. Enumerates all minimal
/// recovery sets depth-first with a span-based pruning bound, then packs
/// exactly. Guards: m <= 24 over GF(2), m <= 12 otherwise.
struct OracleResult {
    size_t k_max = 0;
    std::vector<RecoverySet> witnesses;
};
OracleResult max_pir_k(const Matrix& g, size_t i);

}  // namespace pir

#endif  // PIR_ORACLE_HPP_
