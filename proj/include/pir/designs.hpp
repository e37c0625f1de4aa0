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

#ifndef PIR_DESIGNS_HPP_
#define PIR_DESIGNS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pir/gf.hpp"

namespace pir {

/// S(t, ell, n): every t-subset of the n points (0-indexed) lies in exactly
/// one block.
struct SteinerSystem {
    unsigned t = 2, ell = 3, n = 0;
    std::vector<std::vector<std::uint32_t>> blocks;
};

/// Exact pair-coverage check (t = 2): every 2-subset in exactly one block,
/// all blocks of size ell, and the counting identities. Throws on failure.
void validate_design(const SteinerSystem& s);

/// Number of blocks through each point: C(n-1, t-1) / C(ell-1, t-1).
size_t replication_number(const SteinerSystem& s);

/// Steiner triple system S(2, 3, n). Bose construction for n = 3 (mod 6),
/// Skolem construction (half-idempotent quasigroup) for n = 1 (mod 6).
SteinerSystem steiner_triple(unsigned n);

/// Lines of PG(2, q): S(2, q+1, q^2+q+1). q may be any prime power the
/// field layer supports.
SteinerSystem projective_plane(unsigned q);

/// Text format: first line "t l n", then one block per line.
std::string to_text(const SteinerSystem& s);
SteinerSystem steiner_from_text(const std::string& text);

}  // namespace pir

#endif  // PIR_DESIGNS_HPP_
