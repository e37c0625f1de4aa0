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

#include "pir/constructions.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "pir/oracle.hpp"

namespace pir {

BipartiteIncidence certify_incidence(size_t s,
                                     const std::vector<std::vector<std::uint32_t>>& sets) {
    BipartiteIncidence inc;
    inc.left = s;
    inc.right = sets.size();
    inc.parity_sets = sets;
    std::vector<std::vector<std::uint32_t>> memberships(s);
    for (std::uint32_t j = 0; j < sets.size(); ++j)
        for (std::uint32_t i : sets[j]) {
            if (i >= s) throw DomainError("incidence: bit index out of range");
            memberships[i].push_back(j);
        }
    // two bits sharing two parities = a 4-cycle
    std::vector<std::vector<std::uint32_t>> by_pair;
    for (size_t a = 0; a < s; ++a)
        for (size_t b = a + 1; b < s; ++b) {
            size_t common = 0;
            for (std::uint32_t ja : memberships[a])
                common += std::count(memberships[b].begin(), memberships[b].end(), ja);
            if (common > 1) throw DomainError("incidence: 4-cycle between message bits");
        }
    inc.min_left_degree = s == 0 ? 0 : memberships[0].size();
    for (const auto& m : memberships)
        inc.min_left_degree = std::min(inc.min_left_degree, m.size());
    return inc;
}

PirCode systematic_from_sets(size_t s,
                             const std::vector<std::vector<std::uint32_t>>& sets) {
    BipartiteIncidence inc = certify_incidence(s, sets);
    if (inc.min_left_degree == 0)
        throw DomainError("systematic_from_sets: a message bit lies in no parity");
    size_t r = sets.size(), k = inc.min_left_degree + 1;
    Field f = Field::gf2();
    Matrix g(f, s, s + r);
    for (size_t i = 0; i < s; ++i) g.set(i, i, 1);
    for (size_t j = 0; j < r; ++j)
        for (std::uint32_t i : sets[j]) g.set(i, s + j, 1);

    std::vector<std::vector<RecoverySet>> w(s);
    for (std::uint32_t i = 0; i < s; ++i) {
        w[i].push_back(make_set({i}));
        size_t taken = 1;
        for (std::uint32_t j = 0; j < r && taken < k; ++j) {
            if (std::find(sets[j].begin(), sets[j].end(), i) == sets[j].end()) continue;
            RecoverySet rs;
            for (std::uint32_t other : sets[j])
                if (other != i) rs.members.emplace_back(other, 1);
            rs.members.emplace_back(std::uint32_t(s + j), 1);
            std::sort(rs.members.begin(), rs.members.end());
            w[i].push_back(std::move(rs));
            ++taken;
        }
    }
    return make_pir_code(f, g, std::move(w), "systematic_from_sets");
}

PirCode cubic_code(unsigned sigma, unsigned k, size_t s) {
    if (sigma < 2 || k < 2) throw DomainError("cubic_code: need sigma >= 2, k >= 2");
    double cells = 1;
    for (unsigned j = 0; j + 1 < k; ++j) {
        cells *= sigma;
        if (cells > double(1 << 22)) throw GuardError("cubic_code: sigma^(k-1) too large");
    }
    size_t s_full = size_t(cells);
    if (s == 0) s = s_full;
    if (s > s_full) throw DomainError("cubic_code: s exceeds sigma^(k-1)");
    size_t group = s_full / sigma;  // sigma^(k-2)
    size_t m = s + size_t(k - 1) * group;
    Field f = Field::gf2();
    Matrix g(f, s, m);
    for (size_t i = 0; i < s; ++i) g.set(i, i, 1);

    // cell index: mixed-radix digits (i_1 .. i_{k-1}), i_1 most significant
    auto digits_of = [&](size_t cell) {
        std::vector<unsigned> d(k - 1);
        for (size_t j = k - 1; j-- > 0;) {
            d[j] = unsigned(cell % sigma);
            cell /= sigma;
        }
        return d;
    };
    auto cell_of = [&](const std::vector<unsigned>& d) {
        size_t c = 0;
        for (unsigned x : d) c = c * sigma + x;
        return c;
    };
    // parity for axis xi and the cell's remaining digits
    auto parity_col = [&](unsigned xi, const std::vector<unsigned>& d) {
        size_t red = 0;
        for (unsigned j = 0; j + 1 < k; ++j)
            if (j != xi) red = red * sigma + d[j];
        return s + size_t(xi) * group + red;
    };
    for (size_t cell = 0; cell < s; ++cell) {
        auto d = digits_of(cell);
        for (unsigned xi = 0; xi + 1 < k; ++xi) g.set(cell, parity_col(xi, d), 1);
    }

    std::vector<std::vector<RecoverySet>> w(s);
    for (size_t cell = 0; cell < s; ++cell) {
        auto d = digits_of(cell);
        w[cell].push_back(make_set({std::uint32_t(cell)}));
        for (unsigned xi = 0; xi + 1 < k; ++xi) {
            RecoverySet rs;
            auto dd = d;
            for (unsigned delta = 0; delta < sigma; ++delta) {
                if (delta == d[xi]) continue;
                dd[xi] = delta;
                size_t other = cell_of(dd);
                if (other < s) rs.members.emplace_back(std::uint32_t(other), 1);
            }
            rs.members.emplace_back(std::uint32_t(parity_col(xi, d)), 1);
            std::sort(rs.members.begin(), rs.members.end());
            w[cell].push_back(std::move(rs));
        }
    }
    return make_pir_code(f, g, std::move(w), "cubic_code");
}

PirCode steiner_code(const SteinerSystem& sys, SteinerOrientation orientation) {
    if (sys.t != 2) throw DomainError("steiner_code: t = 2 systems only");
    validate_design(sys);
    if (orientation == SteinerOrientation::kColumn) {
        std::vector<std::vector<std::uint32_t>> sets = sys.blocks;
        return systematic_from_sets(sys.n, sets);
    }
    // Row orientation: blocks become message bits, points become parities.
    std::vector<std::vector<std::uint32_t>> sets(sys.n);
    for (std::uint32_t b = 0; b < sys.blocks.size(); ++b)
        for (std::uint32_t p : sys.blocks[b]) sets[p].push_back(b);
    return systematic_from_sets(sys.blocks.size(), sets);
}

std::vector<std::vector<std::uint32_t>> lexicode_rows(unsigned r, unsigned k) {
    if (k < 3 || r < k - 1) throw DomainError("lexicode_rows: need r >= k-1 >= 2");
    unsigned w = k - 1;
    std::vector<std::vector<std::uint32_t>> rows;
    // first lexicographic weight-w subset of [r]
    std::vector<std::uint32_t> comb(w);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        bool ok = true;
        for (const auto& prev : rows) {
            size_t common = 0;
            for (std::uint32_t x : comb)
                common += std::binary_search(prev.begin(), prev.end(), x);
            if (common > 1) {  // distance < 2k-4
                ok = false;
                break;
            }
        }
        if (ok) rows.push_back(comb);
        // next combination
        int j = int(w) - 1;
        while (j >= 0 && comb[j] == r - w + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (size_t t = j + 1; t < w; ++t) comb[t] = comb[t - 1] + 1;
    }
    return rows;
}

size_t constant_weight_optimal_rows(unsigned r, unsigned k) {
    if (r > 12) throw GuardError("constant_weight_optimal_rows: r > 12");
    unsigned w = k - 1;
    std::vector<std::uint32_t> comb(w);
    std::iota(comb.begin(), comb.end(), 0);
    std::vector<std::uint32_t> cands;  // weight-w subsets as masks
    while (true) {
        std::uint32_t mask = 0;
        for (std::uint32_t x : comb) mask |= std::uint32_t(1) << x;
        cands.push_back(mask);
        int j = int(w) - 1;
        while (j >= 0 && comb[j] == r - w + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (size_t t = j + 1; t < w; ++t) comb[t] = comb[t - 1] + 1;
    }
    // exact maximum set of masks with pairwise intersection <= 1
    size_t best = 0;
    std::vector<std::uint32_t> cur;
    std::function<void(size_t)> go = [&](size_t idx) {
        best = std::max(best, cur.size());
        if (cur.size() + (cands.size() - idx) <= best) return;
        for (size_t j = idx; j < cands.size(); ++j) {
            bool ok = true;
            for (std::uint32_t m : cur)
                if (std::popcount(m & cands[j]) > 1) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(cands[j]);
            go(j + 1);
            cur.pop_back();
        }
    };
    go(0);
    return best;
}

PirCode constant_weight_code(unsigned r, unsigned k) {
    auto rows = lexicode_rows(r, k);
    if (rows.empty()) throw DomainError("constant_weight_code: no rows fit");
    // rows give per-bit parity memberships; invert to per-parity bit sets
    std::vector<std::vector<std::uint32_t>> sets(r);
    for (std::uint32_t i = 0; i < rows.size(); ++i)
        for (std::uint32_t j : rows[i]) sets[j].push_back(i);
    return systematic_from_sets(rows.size(), sets);
}

namespace {

// polynomial bit helpers over GF(2)
unsigned poly_deg(std::uint32_t p) { return p ? 31 - std::countl_zero(p) : 0; }

std::uint32_t poly_mod(std::uint64_t a, std::uint32_t m) {
    unsigned dm = poly_deg(m);
    while (a >> dm << dm) {
        unsigned da = 63 - std::countl_zero(a);
        if (da < dm) break;
        a ^= std::uint64_t(m) << (da - dm);
    }
    return std::uint32_t(a);
}

}  // namespace

OrthogonalSet cyclic_orthogonal_search(std::uint32_t g_mask, unsigned n, unsigned i) {
    if (n < 2 || n > 30 || i >= n) throw DomainError("cyclic_orthogonal_search: bad n or i");
    std::uint64_t xn1 = (std::uint64_t(1) << n) | 1;  // x^n + 1
    if (poly_mod(xn1, g_mask) != 0)
        throw DomainError("cyclic_orthogonal_search: g(x) does not divide x^n - 1");
    unsigned deg = poly_deg(g_mask);
    unsigned dim = n - deg;
    Field f = Field::gf2();
    Matrix gen(f, dim, n);
    for (unsigned row = 0; row < dim; ++row)
        for (unsigned b = 0; b <= deg; ++b)
            if ((g_mask >> b) & 1) gen.set(row, row + b, 1);
    Matrix h = dual(rref(gen).reduced);

    size_t dual_dim = h.rows();
    std::vector<std::uint64_t> sets;
    std::uint64_t ei = std::uint64_t(1) << i;
    bool exact = dual_dim <= 16;
    std::uint64_t greedy_used = 0;
    OrthogonalSet out;
    for (std::uint64_t msg = 1; msg < (std::uint64_t(1) << dual_dim); ++msg) {
        std::uint64_t cw = 0;
        for (size_t rI = 0; rI < dual_dim; ++rI)
            if ((msg >> rI) & 1) cw ^= h.packed_row(rI)[0];
        if (!(cw & ei)) continue;
        std::uint64_t rest = cw ^ ei;
        if (rest == 0) continue;  // weight-1 dual word: position i is degenerate
        if (exact)
            sets.push_back(rest);
        else if (!(rest & greedy_used)) {
            greedy_used |= rest;
            sets.push_back(rest);
        }
    }
    std::vector<std::uint64_t> chosen = sets;
    if (exact) chosen = max_disjoint_packing(std::move(sets)).chosen;
    out.j = chosen.size();
    for (std::uint64_t mask : chosen) {
        std::vector<std::uint32_t> support;
        for (std::uint32_t b = 0; b < n; ++b)
            if ((mask >> b) & 1) support.push_back(b);
        out.sets.push_back(std::move(support));
    }
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

PirCode majority_logic_15_7() {
    const std::uint32_t g_mask = 0b111010001;  // 1 + x^4 + x^6 + x^7 + x^8
    const unsigned n = 15, dim = 7;
    Field f = Field::gf2();
    Matrix gen(f, dim, n);
    for (unsigned row = 0; row < dim; ++row)
        for (unsigned b = 0; b <= 8; ++b)
            if ((g_mask >> b) & 1) gen.set(row, row + b, 1);
    Rref rr = rref(gen);
    // g(0) != 0, so the pivots are the first seven coordinates and the
    // reduced matrix is systematic there: message bit i sits at position i.
    Matrix gsys = rr.reduced;

    OrthogonalSet orth = cyclic_orthogonal_search(g_mask, n, n - 1);
    std::vector<std::vector<RecoverySet>> w(dim);
    for (std::uint32_t i = 0; i < dim; ++i) {
        unsigned delta = (i + n - (n - 1)) % n;  // shift moving n-1 onto i
        w[i].push_back(make_set({i}));
        for (const auto& support : orth.sets) {
            RecoverySet rs;
            for (std::uint32_t c : support)
                rs.members.emplace_back((c + delta) % n, 1);
            std::sort(rs.members.begin(), rs.members.end());
            w[i].push_back(std::move(rs));
        }
    }
    return make_pir_code(f, gsys, std::move(w), "majority_logic_15_7");
}

}  // namespace pir
