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

#include "pir/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

namespace pir {

namespace {

constexpr size_t kSolutionGuard = size_t(1) << 20;

// --- GF(2): columns and partial sums are s-bit words -----------------------

// Basis in leading-bit form: by_high[b] is the unique basis vector whose
// highest set bit is b, or 0.
struct Gf2Basis {
    std::uint64_t by_high[64] = {};
    void insert(std::uint64_t v) {
        while (v) {
            int h = 63 - std::countl_zero(v);
            if (!by_high[h]) {
                by_high[h] = v;
                return;
            }
            v ^= by_high[h];
        }
    }
    bool contains(std::uint64_t v) const {
        while (v) {
            int h = 63 - std::countl_zero(v);
            if (!by_high[h]) return false;
            v ^= by_high[h];
        }
        return true;
    }
};

struct Gf2Enumerator {
    const std::vector<std::uint64_t>& cols;
    std::uint64_t target;
    std::vector<Gf2Basis> suffix;  // suffix[p] spans cols[p..)
    std::vector<std::uint64_t> solutions;

    Gf2Enumerator(const std::vector<std::uint64_t>& c, std::uint64_t t)
        : cols(c), target(t) {
        suffix.resize(cols.size() + 1);
        for (size_t p = cols.size(); p-- > 0;) {
            suffix[p] = suffix[p + 1];
            suffix[p].insert(cols[p]);
        }
    }

    void dfs(size_t pos, std::uint64_t acc, std::uint64_t mask) {
        if (acc == target && mask != 0) {
            // supersets of a recorded set cannot be minimal; stop here
            if (solutions.size() >= kSolutionGuard)
                throw GuardError("max_pir_k: recovery-set space too large");
            solutions.push_back(mask);
            return;
        }
        if (pos == cols.size()) return;
        if (!suffix[pos].contains(acc ^ target)) return;
        if (cols[pos] != 0)
            dfs(pos + 1, acc ^ cols[pos], mask | (std::uint64_t(1) << pos));
        dfs(pos + 1, acc, mask);
    }
};

// Keep only minimal sets: sort by size, drop anything containing a kept set.
std::vector<std::uint64_t> minimal_only(std::vector<std::uint64_t> sets) {
    std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<std::uint64_t> kept;
    for (std::uint64_t s : sets) {
        bool dominated = false;
        for (std::uint64_t k : kept)
            if ((s & k) == k) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(s);
    }
    return kept;
}

// --- GF(q): column vectors with coefficient choices ------------------------

struct GfqBasis {
    const Field* f = nullptr;
    std::vector<std::vector<Elem>> rows;  // reduced, pivot coefficient 1
    std::vector<size_t> pivots;
    GfqBasis() = default;
    explicit GfqBasis(const Field& fld) : f(&fld) {}

    std::vector<Elem> reduce(std::vector<Elem> v) const {
        for (size_t r = 0; r < rows.size(); ++r) {
            Elem c = v[pivots[r]];
            if (c == 0) continue;
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = f->sub(v[j], f->mul(c, rows[r][j]));
        }
        return v;
    }
    void insert(const std::vector<Elem>& v0) {
        std::vector<Elem> v = reduce(v0);
        size_t p = v.size();
        for (size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                p = j;
                break;
            }
        if (p == v.size()) return;
        Elem inv = f->inv(v[p]);
        for (auto& x : v) x = f->mul(x, inv);
        rows.push_back(v);
        pivots.push_back(p);
    }
    bool contains(const std::vector<Elem>& v) const {
        std::vector<Elem> r = reduce(v);
        for (Elem x : r)
            if (x != 0) return false;
        return true;
    }
};

struct GfqEnumerator {
    const Field& f;
    std::vector<std::vector<Elem>> cols;
    std::vector<Elem> target;
    std::vector<GfqBasis> suffix;
    // first coefficient assignment seen per support mask
    std::map<std::uint64_t, std::vector<std::pair<std::uint32_t, Elem>>> by_mask;

    GfqEnumerator(const Matrix& g, size_t i) : f(g.field()) {
        for (size_t c = 0; c < g.cols(); ++c) cols.push_back(g.col(c));
        target.assign(g.rows(), 0);
        target[i] = 1;
        suffix.assign(cols.size() + 1, GfqBasis(f));
        for (size_t p = cols.size(); p-- > 0;) {
            suffix[p] = suffix[p + 1];
            suffix[p].insert(cols[p]);
        }
    }

    bool is_zero_col(size_t j) const {
        for (Elem e : cols[j])
            if (e) return false;
        return true;
    }

    void dfs(size_t pos, std::vector<Elem>& acc, std::uint64_t mask,
             std::vector<std::pair<std::uint32_t, Elem>>& picks) {
        if (mask != 0 && acc == target) {
            if (by_mask.size() >= kSolutionGuard)
                throw GuardError("max_pir_k: recovery-set space too large");
            by_mask.emplace(mask, picks);
            return;
        }
        if (pos == cols.size()) return;
        std::vector<Elem> need(acc.size());
        for (size_t j = 0; j < acc.size(); ++j) need[j] = f.sub(target[j], acc[j]);
        if (!suffix[pos].contains(need)) return;
        if (!is_zero_col(pos)) {
            for (unsigned coef = 1; coef < f.q(); ++coef) {
                std::vector<Elem> nxt = acc;
                for (size_t j = 0; j < nxt.size(); ++j)
                    nxt[j] = f.add(nxt[j], f.mul(Elem(coef), cols[pos][j]));
                picks.emplace_back(std::uint32_t(pos), Elem(coef));
                dfs(pos + 1, nxt, mask | (std::uint64_t(1) << pos), picks);
                picks.pop_back();
            }
        }
        dfs(pos + 1, acc, mask, picks);
    }
};

}  // namespace

PackResult max_disjoint_packing(std::vector<std::uint64_t> sets) {
    std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    PackResult best;
    std::vector<std::uint64_t> cur;

    // greedy incumbent
    std::uint64_t used = 0;
    for (std::uint64_t s : sets)
        if (!(s & used)) {
            used |= s;
            best.chosen.push_back(s);
        }
    best.count = best.chosen.size();

    // depth-first search; the bound packs the smallest available sizes into
    // the free capacity of the available union (sets are size-sorted, and a
    // packed set consumes its size in distinct free positions)
    std::vector<std::uint64_t> stack_sets = sets;
    std::function<void(size_t, std::uint64_t)> go = [&](size_t idx, std::uint64_t u) {
        std::uint64_t avail_union = 0;
        for (size_t j = idx; j < stack_sets.size(); ++j)
            if (!(stack_sets[j] & u)) avail_union |= stack_sets[j];
        size_t capacity = size_t(std::popcount(avail_union));
        size_t sum = 0, extra = 0;
        for (size_t j = idx; j < stack_sets.size(); ++j) {
            if (stack_sets[j] & u) continue;
            sum += size_t(std::popcount(stack_sets[j]));
            if (sum > capacity) break;
            ++extra;
        }
        if (cur.size() + extra <= best.count) return;
        for (size_t j = idx; j < stack_sets.size(); ++j) {
            if (stack_sets[j] & u) continue;
            cur.push_back(stack_sets[j]);
            if (cur.size() > best.count) {
                best.count = cur.size();
                best.chosen = cur;
            }
            go(j + 1, u | stack_sets[j]);
            cur.pop_back();
        }
    };
    go(0, 0);
    return best;
}

OracleResult max_pir_k(const Matrix& g, size_t i) {
    const Field& f = g.field();
    size_t m = g.cols();
    if (i >= g.rows()) throw DomainError("max_pir_k: message index out of range");
    if (f.q() == 2) {
        if (m > 24) throw GuardError("max_pir_k: m > 24 over GF(2)");
        if (g.rows() > 63) throw GuardError("max_pir_k: s too large");
        std::vector<std::uint64_t> cols(m);
        for (size_t c = 0; c < m; ++c) cols[c] = g.col_mask(c);
        Gf2Enumerator en(cols, std::uint64_t(1) << i);
        en.dfs(0, 0, 0);
        auto minimal = minimal_only(std::move(en.solutions));
        PackResult pack = max_disjoint_packing(minimal);
        OracleResult out;
        out.k_max = pack.count;
        for (std::uint64_t mask : pack.chosen) {
            RecoverySet rs;
            for (std::uint32_t c = 0; c < m; ++c)
                if ((mask >> c) & 1) rs.members.emplace_back(c, 1);
            out.witnesses.push_back(std::move(rs));
        }
        return out;
    }
    if (m > 12) throw GuardError("max_pir_k: m > 12 over GF(q > 2)");
    GfqEnumerator en(g, i);
    std::vector<Elem> acc(g.rows(), 0);
    std::vector<std::pair<std::uint32_t, Elem>> picks;
    en.dfs(0, acc, 0, picks);
    std::vector<std::uint64_t> masks;
    masks.reserve(en.by_mask.size());
    for (auto& [mask, pk] : en.by_mask) masks.push_back(mask);
    auto minimal = minimal_only(std::move(masks));
    // restrict the map to minimal supports
    PackResult pack = max_disjoint_packing(minimal);
    OracleResult out;
    out.k_max = pack.count;
    for (std::uint64_t mask : pack.chosen) {
        RecoverySet rs;
        rs.members = en.by_mask.at(mask);
        out.witnesses.push_back(std::move(rs));
    }
    return out;
}

}  // namespace pir
