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

#ifndef PIR_COSET_HPP_
#define PIR_COSET_HPP_

#include <string>
#include <vector>

#include "pir/pir_code.hpp"

namespace pir {

/// The dual view of a PIR code (GF(2)): a base code C, given by a
/// parity-check matrix, together with cosets that each contain k
/// support-disjoint vectors. When the syndromes are linearly independent
/// the dual of C is a k-server PIR code.
struct CosetFamily {
    Matrix h;  // parity check of the base code; one row per coset
    std::vector<std::vector<Elem>> syndromes;               // [t], each length t
    std::vector<std::vector<std::vector<std::uint32_t>>> members;  // [t][k] supports

    CosetFamily() : h(Field::gf2(), 0, 0) {}
    size_t coset_count() const { return syndromes.size(); }
    size_t length() const { return h.cols(); }
};

/// PirCode -> CosetFamily: the generator becomes the base code's parity
/// check, coset i is the preimage of e_i, and the witness supports are its
/// disjoint members.
CosetFamily to_coset_family(const PirCode& code);

/// All CosetFamily invariants: independent syndromes, members carry the
/// declared syndrome, supports pairwise disjoint within each coset.
bool bk_check(const CosetFamily& fam, std::string* why = nullptr);

/// The [H|S] procedure: append the syndrome matrix, row-reduce until the
/// right block is the identity, and read the left block as the generator
/// of the dual PIR code. Witnesses are the coset members.
PirCode bk_to_generator(const CosetFamily& fam);

/// Punctures the base code in one position, keeping a maximal independent
/// subset of the cosets (one coset may drop). Disjoint members survive.
CosetFamily puncture_family(const CosetFamily& fam, size_t pos);

}  // namespace pir

#endif  // PIR_COSET_HPP_
