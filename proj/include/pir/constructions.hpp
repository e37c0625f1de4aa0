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

#ifndef PIR_CONSTRUCTIONS_HPP_
#define PIR_CONSTRUCTIONS_HPP_

#include <cstdint>
#include <vector>

#include "pir/designs.hpp"
#include "pir/pir_code.hpp"

namespace pir {

/// Bipartite incidence between message bits (left) and parities (right),
/// certified 4-cycle free: no two left vertices share two right neighbors.
struct BipartiteIncidence {
    size_t left = 0, right = 0;
    std::vector<std::vector<std::uint32_t>> parity_sets;  // per parity, member bits
    size_t min_left_degree = 0;
};

/// Checks the 4-cycle-free condition (all row pairs share <= 1 parity) and
/// records the minimum left degree. Throws if a 4-cycle exists.
BipartiteIncidence certify_incidence(size_t s,
                                     const std::vector<std::vector<std::uint32_t>>& sets);

/// Systematic [s + r, s] code whose parity j sums the message bits in
/// sets[j]; a (min-degree + 1)-server PIR code when the incidence is
/// 4-cycle free. This is the common engine behind the Steiner and
/// constant-weight constructions.
PirCode systematic_from_sets(size_t s, const std::vector<std::vector<std::uint32_t>>& sets);

/// Cubic construction: information bits on a (k-1)-dimensional grid of side
/// sigma, one parity group per axis. s defaults to the full sigma^(k-1);
/// a smaller s keeps only the first s cells (missing cells read as zero).
/// m = s + (k-1) * sigma^(k-2).
PirCode cubic_code(unsigned sigma, unsigned k, size_t s = 0);

enum class SteinerOrientation { kColumn, kRow };

/// Column orientation: points are message bits, blocks are parities,
/// k = replication + 1. Row orientation: transposed incidence (blocks are
/// message bits, points are parities), k = block size + 1.
PirCode steiner_code(const SteinerSystem& sys, SteinerOrientation orientation);

/// Greedy lexicographic constant-weight code: rows of weight k-1, length r,
/// pairwise distance >= 2k-4 (equivalently pairwise intersection <= 1).
std::vector<std::vector<std::uint32_t>> lexicode_rows(unsigned r, unsigned k);

/// Exhaustive optimum row count for the same packing problem (r <= 12).
size_t constant_weight_optimal_rows(unsigned r, unsigned k);

/// [s + r, s] k-server code from the greedy lexicode, s = row count.
PirCode constant_weight_code(unsigned r, unsigned k);

/// Dual codewords of the cyclic code generated by g (bit mask, degree
/// below n) that pairwise intersect exactly at coordinate i. Exact packing
/// when the dual has at most 2^16 codewords, greedy beyond.
struct OrthogonalSet {
    size_t j = 0;                                  // number of orthogonal vectors
    std::vector<std::vector<std::uint32_t>> sets;  // supports minus coordinate i
};
OrthogonalSet cyclic_orthogonal_search(std::uint32_t g_mask, unsigned n, unsigned i);

/// The (15,7) cyclic code generated by 1 + x^4 + x^6 + x^7 + x^8 as a
/// 5-server PIR code; recovery sets found on the last coordinate and
/// transported to every message bit by cyclic shifts, then re-verified.
PirCode majority_logic_15_7();

}  // namespace pir

#endif  // PIR_CONSTRUCTIONS_HPP_
