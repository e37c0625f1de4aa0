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

#include "pir/coset.hpp"

#include <algorithm>
#include <set>

namespace pir {

namespace {

std::vector<Elem> syndrome_of_support(const Matrix& h,
                                      const std::vector<std::uint32_t>& support) {
    std::vector<Elem> s(h.rows(), 0);
    for (std::uint32_t c : support)
        for (size_t r = 0; r < h.rows(); ++r) s[r] = Elem(s[r] ^ h.at(r, c));
    return s;
}

Matrix rows_to_matrix(const Field& f, const std::vector<std::vector<Elem>>& rows,
                      size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    return m;
}

}  // namespace

CosetFamily to_coset_family(const PirCode& code) {
    if (code.field.q() != 2) throw DomainError("coset view: GF(2) codes only");
    CosetFamily fam;
    fam.h = code.g;
    for (size_t i = 0; i < code.s; ++i) {
        std::vector<Elem> syn(code.s, 0);
        syn[i] = 1;
        fam.syndromes.push_back(syn);
        std::vector<std::vector<std::uint32_t>> mem;
        for (const auto& rs : code.witnesses[i]) mem.push_back(rs.columns());
        fam.members.push_back(std::move(mem));
    }
    return fam;
}

bool bk_check(const CosetFamily& fam, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    size_t t = fam.coset_count();
    if (t == 0 || fam.members.size() != t) return fail("empty or ragged family");
    if (fam.h.rows() != t) return fail("parity-check rows must match coset count");
    Matrix syn(fam.h.field(), t, t);
    for (size_t i = 0; i < t; ++i) {
        if (fam.syndromes[i].size() != t) return fail("syndrome length mismatch");
        for (size_t r = 0; r < t; ++r) syn.set(r, i, fam.syndromes[i][r]);
    }
    if (rank(syn) != t) return fail("syndromes are linearly dependent");
    for (size_t i = 0; i < t; ++i) {
        std::set<std::uint32_t> seen;
        if (fam.members[i].empty()) return fail("coset without members");
        for (const auto& support : fam.members[i]) {
            if (support.empty()) return fail("empty coset member");
            for (std::uint32_t c : support) {
                if (c >= fam.length()) return fail("member position out of range");
                if (!seen.insert(c).second)
                    return fail("coset members are not support-disjoint");
            }
            if (syndrome_of_support(fam.h, support) != fam.syndromes[i])
                return fail("member does not carry the coset syndrome");
        }
    }
    return true;
}

PirCode bk_to_generator(const CosetFamily& fam) {
    std::string why;
    if (!bk_check(fam, &why)) throw DomainError("bk_to_generator: " + why);
    size_t t = fam.coset_count(), m = fam.length();
    size_t k = fam.members[0].size();
    for (const auto& mem : fam.members)
        if (mem.size() != k)
            throw DomainError("bk_to_generator: cosets carry unequal member counts");

    const Field& f = fam.h.field();
    // [H | S], then row-reduce until the right block is the identity.
    Matrix aug(f, t, m + t);
    for (size_t r = 0; r < t; ++r) {
        for (size_t c = 0; c < m; ++c) aug.set(r, c, fam.h.at(r, c));
        for (size_t i = 0; i < t; ++i) aug.set(r, m + i, fam.syndromes[i][r]);
    }
    for (size_t j = 0; j < t; ++j) {
        size_t piv = j;
        while (piv < t && aug.at(piv, m + j) == 0) ++piv;
        if (piv == t) throw DomainError("bk_to_generator: singular syndrome matrix");
        aug.row_swap(piv, j);
        Elem inv = f.inv(aug.at(j, m + j));
        if (inv != 1) aug.row_scale(j, inv);
        for (size_t r = 0; r < t; ++r) {
            if (r == j) continue;
            Elem v = aug.at(r, m + j);
            if (v) aug.row_addmul(r, j, f.neg(v));
        }
    }
    Matrix g(f, t, m);
    for (size_t r = 0; r < t; ++r)
        for (size_t c = 0; c < m; ++c) g.set(r, c, aug.at(r, c));

    std::vector<std::vector<RecoverySet>> w(t);
    for (size_t i = 0; i < t; ++i)
        for (const auto& support : fam.members[i]) {
            RecoverySet rs;
            std::vector<std::uint32_t> cols = support;
            std::sort(cols.begin(), cols.end());
            for (std::uint32_t c : cols) rs.members.emplace_back(c, 1);
            w[i].push_back(std::move(rs));
        }
    return make_pir_code(f, g, std::move(w), "bk_to_generator");
}

CosetFamily puncture_family(const CosetFamily& fam, size_t pos) {
    std::string why;
    if (!bk_check(fam, &why)) throw DomainError("puncture_family: " + why);
    if (pos >= fam.length()) throw DomainError("puncture_family: position out of range");
    const Field& f = fam.h.field();
    size_t m = fam.length();

    // Base code generator, punctured; its dual is the new parity check.
    Matrix cgen = dual(fam.h);
    Matrix cpunct(f, cgen.rows(), m - 1);
    for (size_t r = 0; r < cgen.rows(); ++r)
        for (size_t c = 0; c < m; ++c) {
            if (c == pos) continue;
            cpunct.set(r, c < pos ? c : c - 1, cgen.at(r, c));
        }
    Rref rr = rref(cpunct);
    Matrix basis(f, rr.pivots.size(), m - 1);
    for (size_t r = 0; r < rr.pivots.size(); ++r)
        for (size_t c = 0; c < m - 1; ++c) basis.set(r, c, rr.reduced.at(r, c));
    Matrix hstar = dual(basis);

    // Punctured members drop the position; recompute syndromes and keep a
    // maximal independent subset of the cosets (greedy by index).
    struct Cand {
        std::vector<Elem> syn;
        std::vector<std::vector<std::uint32_t>> mem;
    };
    std::vector<Cand> cands;
    for (size_t i = 0; i < fam.coset_count(); ++i) {
        Cand c;
        bool dead = false;
        for (const auto& support : fam.members[i]) {
            std::vector<std::uint32_t> moved;
            for (std::uint32_t x : support) {
                if (x == pos) continue;
                moved.push_back(x < pos ? x : x - 1);
            }
            if (moved.empty()) {
                dead = true;  // this member collapsed; coset syndrome is zero
                continue;
            }
            std::vector<Elem> syn = syndrome_of_support(hstar, moved);
            if (c.mem.empty())
                c.syn = syn;
            else if (syn != c.syn)
                throw DomainError("puncture_family: members split across cosets");
            c.mem.push_back(std::move(moved));
        }
        if (dead && !c.mem.empty()) {
            // a collapsed member forces the zero syndrome; drop the coset
            bool zero = std::all_of(c.syn.begin(), c.syn.end(),
                                    [](Elem e) { return e == 0; });
            if (!zero) throw DomainError("puncture_family: inconsistent collapse");
            continue;
        }
        if (!c.mem.empty()) cands.push_back(std::move(c));
    }

    CosetFamily out;
    out.h = hstar;
    std::vector<std::vector<Elem>> chosen_rows;
    Matrix probe(f, 0, 0);
    for (auto& c : cands) {
        bool zero = std::all_of(c.syn.begin(), c.syn.end(), [](Elem e) { return e == 0; });
        if (zero) continue;
        chosen_rows.push_back(c.syn);
        Matrix test = rows_to_matrix(f, chosen_rows, hstar.rows());
        if (rank(test) != chosen_rows.size()) {
            chosen_rows.pop_back();
            continue;
        }
        out.syndromes.push_back(c.syn);
        out.members.push_back(c.mem);
    }
    if (out.coset_count() != hstar.rows())
        throw DomainError("puncture_family: fewer independent cosets than expected");
    // equalize member counts so the dual code gets a uniform k
    size_t k = out.members[0].size();
    for (auto& mem : out.members) k = std::min(k, mem.size());
    for (auto& mem : out.members) mem.resize(k);
    return out;
}

}  // namespace pir
