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

#include "pir/pir_code.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace pir {

std::vector<std::uint32_t> RecoverySet::columns() const {
    std::vector<std::uint32_t> out;
    out.reserve(members.size());
    for (auto& [c, a] : members) out.push_back(c);
    return out;
}

std::uint64_t RecoverySet::column_mask() const {
    std::uint64_t m = 0;
    for (auto& [c, a] : members) m |= std::uint64_t(1) << c;
    return m;
}

RecoverySet make_set(std::initializer_list<std::uint32_t> cols) {
    RecoverySet r;
    for (auto c : cols) r.members.emplace_back(c, 1);
    std::sort(r.members.begin(), r.members.end());
    return r;
}

VerifyReport verify(const PirCode& code) {
    auto fail = [](size_t i, size_t j, const std::string& why) {
        return VerifyReport{false, why, i, j};
    };
    const Field& f = code.field;
    if (code.g.rows() != code.s || code.g.cols() != code.m)
        return fail(0, 0, "generator shape disagrees with (s, m)");
    if (code.m < code.s) return fail(0, 0, "storage overhead below 1 (m < s)");
    if (code.witnesses.size() != code.s)
        return fail(0, 0, "witness lists must cover every message position");
    if (code.k == 0) return fail(0, 0, "k must be positive");

    for (size_t i = 0; i < code.s; ++i) {
        const auto& sets = code.witnesses[i];
        if (sets.size() != code.k)
            return fail(i, 0, "expected exactly k recovery sets");
        std::set<std::uint32_t> seen;
        for (size_t j = 0; j < sets.size(); ++j) {
            const auto& rs = sets[j].members;
            if (rs.empty()) return fail(i, j, "empty recovery set");
            std::vector<Elem> sum(code.s, 0);
            std::uint32_t prev = 0;
            bool first = true;
            for (auto& [col, coef] : rs) {
                if (col >= code.m) return fail(i, j, "column index out of range");
                if (!first && col <= prev)
                    return fail(i, j, "columns must be strictly increasing");
                prev = col;
                first = false;
                if (coef == 0 || !f.is_valid(coef))
                    return fail(i, j, "recovery coefficients must be nonzero");
                if (f.q() == 2 && coef != 1)
                    return fail(i, j, "GF(2) coefficients must be 1");
                if (!seen.insert(col).second)
                    return fail(i, j, "recovery sets are not pairwise disjoint");
                for (size_t r = 0; r < code.s; ++r)
                    sum[r] = f.add(sum[r], f.mul(coef, code.g.at(r, col)));
            }
            for (size_t r = 0; r < code.s; ++r) {
                Elem want = (r == i) ? 1 : 0;
                if (sum[r] != want)
                    return fail(i, j, "recovery set does not combine to e_i");
            }
        }
    }
    return VerifyReport{};
}

void require_verified(const PirCode& code, const std::string& what) {
    VerifyReport r = verify(code);
    if (!r.ok)
        throw DomainError(what + ": " + r.reason + " (i=" + std::to_string(r.msg_index) +
                          ", set=" + std::to_string(r.set_index) + ")");
}

PirCode make_pir_code(const Field& f, const Matrix& g,
                      std::vector<std::vector<RecoverySet>> witnesses,
                      const std::string& what) {
    PirCode c;
    c.field = f;
    c.s = g.rows();
    c.m = g.cols();
    c.g = g;
    c.k = witnesses.empty() ? 0 : witnesses[0].size();
    c.witnesses = std::move(witnesses);
    require_verified(c, what);
    return c;
}

PirCode identity_code(const Field& f, size_t s) {
    std::vector<std::vector<RecoverySet>> w(s);
    for (size_t i = 0; i < s; ++i) w[i].push_back(make_set({std::uint32_t(i)}));
    return make_pir_code(f, Matrix::identity(f, s), std::move(w), "identity_code");
}

namespace {

RecoverySet shift_set(const RecoverySet& r, std::uint32_t delta) {
    RecoverySet out = r;
    for (auto& [c, a] : out.members) c += delta;
    return out;
}

}  // namespace

PirCode concat(const PirCode& a, const PirCode& b) {
    if (a.field != b.field || a.s != b.s)
        throw ShapeError("concat: codes must share the field and message length");
    Matrix g(a.field, a.s, a.m + b.m);
    for (size_t r = 0; r < a.s; ++r) {
        for (size_t c = 0; c < a.m; ++c) g.set(r, c, a.g.at(r, c));
        for (size_t c = 0; c < b.m; ++c) g.set(r, a.m + c, b.g.at(r, c));
    }
    std::vector<std::vector<RecoverySet>> w(a.s);
    for (size_t i = 0; i < a.s; ++i) {
        w[i] = a.witnesses[i];
        for (const auto& rs : b.witnesses[i])
            w[i].push_back(shift_set(rs, std::uint32_t(a.m)));
    }
    return make_pir_code(a.field, g, std::move(w), "concat");
}

PirCode direct_sum(const PirCode& a, const PirCode& b) {
    if (a.field != b.field || a.k != b.k)
        throw ShapeError("direct_sum: codes must share the field and k");
    Matrix g(a.field, a.s + b.s, a.m + b.m);
    for (size_t r = 0; r < a.s; ++r)
        for (size_t c = 0; c < a.m; ++c) g.set(r, c, a.g.at(r, c));
    for (size_t r = 0; r < b.s; ++r)
        for (size_t c = 0; c < b.m; ++c) g.set(a.s + r, a.m + c, b.g.at(r, c));
    std::vector<std::vector<RecoverySet>> w(a.s + b.s);
    for (size_t i = 0; i < a.s; ++i) w[i] = a.witnesses[i];
    for (size_t i = 0; i < b.s; ++i) {
        for (const auto& rs : b.witnesses[i])
            w[a.s + i].push_back(shift_set(rs, std::uint32_t(a.m)));
    }
    return make_pir_code(a.field, g, std::move(w), "direct_sum");
}

PirCode puncture(const PirCode& c, size_t pos) {
    if (pos >= c.m) throw DomainError("puncture: position out of range");
    Matrix g(c.field, c.s, c.m - 1);
    for (size_t r = 0; r < c.s; ++r)
        for (size_t j = 0; j < c.m; ++j) {
            if (j == pos) continue;
            g.set(r, j < pos ? j : j - 1, c.g.at(r, j));
        }
    std::vector<std::vector<RecoverySet>> surv(c.s);
    size_t k_new = c.k;
    for (size_t i = 0; i < c.s; ++i) {
        for (const auto& rs : c.witnesses[i]) {
            bool hit = false;
            RecoverySet moved;
            for (auto [col, coef] : rs.members) {
                if (col == pos) {
                    hit = true;
                    break;
                }
                moved.members.emplace_back(col < pos ? col : col - 1, coef);
            }
            if (!hit) surv[i].push_back(std::move(moved));
        }
        k_new = std::min(k_new, surv[i].size());
    }
    if (k_new == 0)
        throw DomainError("puncture: a message bit lost all recovery sets");
    for (auto& sets : surv) sets.resize(k_new);
    return make_pir_code(c.field, g, std::move(surv), "puncture");
}

PirCode even_extend(const PirCode& c) {
    if (c.field.q() != 2) throw DomainError("even_extend: GF(2) codes only");
    if (c.k % 2 == 0) throw DomainError("even_extend: k must be odd");
    Matrix g(c.field, c.s, c.m + 1);
    for (size_t r = 0; r < c.s; ++r) {
        Elem rowsum = 0;
        for (size_t j = 0; j < c.m; ++j) {
            g.set(r, j, c.g.at(r, j));
            rowsum ^= c.g.at(r, j);
        }
        g.set(r, c.m, rowsum);  // all m+1 columns now sum to zero
    }
    std::vector<std::vector<RecoverySet>> w(c.s);
    for (size_t i = 0; i < c.s; ++i) {
        w[i] = c.witnesses[i];
        std::vector<bool> used(c.m + 1, false);
        for (const auto& rs : c.witnesses[i])
            for (auto [col, coef] : rs.members) used[col] = true;
        RecoverySet comp;
        for (std::uint32_t j = 0; j <= c.m; ++j)
            if (!used[j]) comp.members.emplace_back(j, 1);
        // odd k: the k sets sum to e_i jointly, so the leftover does too
        w[i].push_back(std::move(comp));
    }
    return make_pir_code(c.field, g, std::move(w), "even_extend");
}

PirCode balanced_multiplicity_code(size_t s, size_t k) {
    if (s == 0 || s > 16) throw DomainError("balanced_multiplicity_code: need 1 <= s <= 16");
    size_t half = size_t(1) << (s - 1);
    if (k == 0 || k % half != 0)
        throw DomainError("balanced_multiplicity_code: 2^(s-1) must divide k");
    size_t mu = k / half;
    size_t ncols = (size_t(1) << s) - 1;
    Field f = Field::gf2();
    Matrix g(f, s, ncols * mu);
    auto col_of = [mu](size_t v, size_t t) { return std::uint32_t((v - 1) * mu + t); };
    for (size_t v = 1; v <= ncols; ++v)
        for (size_t t = 0; t < mu; ++t)
            for (size_t r = 0; r < s; ++r)
                if ((v >> r) & 1) g.set(r, col_of(v, t), 1);

    std::vector<std::vector<RecoverySet>> w(s);
    for (size_t i = 0; i < s; ++i) {
        size_t ei = size_t(1) << i;
        for (size_t t = 0; t < mu; ++t) w[i].push_back(make_set({col_of(ei, t)}));
        for (size_t v = 1; v <= ncols; ++v) {
            size_t u = v ^ ei;
            if (v == ei || u == 0 || v > u) continue;
            for (size_t t = 0; t < mu; ++t)
                w[i].push_back(make_set({col_of(v, t), col_of(u, t)}));
        }
    }
    return make_pir_code(f, g, std::move(w), "balanced_multiplicity_code");
}

PirCode example2_code() {
    Field f = Field::gf2();
    Matrix g(f, 4, 8);
    const int rows[4][8] = {
        {1, 0, 0, 0, 1, 0, 0, 1},
        {0, 1, 0, 0, 1, 1, 0, 0},
        {0, 0, 1, 0, 0, 1, 1, 0},
        {0, 0, 0, 1, 0, 0, 1, 1},
    };
    for (size_t r = 0; r < 4; ++r)
        for (size_t c = 0; c < 8; ++c) g.set(r, c, Elem(rows[r][c]));
    std::vector<std::vector<RecoverySet>> w = {
        {make_set({0}), make_set({1, 4}), make_set({3, 7})},
        {make_set({1}), make_set({0, 4}), make_set({2, 5})},
        {make_set({2}), make_set({3, 6}), make_set({1, 5})},
        {make_set({3}), make_set({2, 6}), make_set({0, 7})},
    };
    return make_pir_code(f, g, std::move(w), "example2_code");
}

PirCode gf4_five_two_code() {
    Field f = Field::gf2ext(2);
    Elem a = f.alpha();
    Elem a2 = f.mul(a, a);
    Matrix g(f, 2, 5);
    g.set(0, 0, 1);
    g.set(1, 1, 1);
    g.set(0, 2, 1), g.set(1, 2, 1);
    g.set(0, 3, 1), g.set(1, 3, a);
    g.set(0, 4, 1), g.set(1, 4, a2);
    RecoverySet x1a;
    x1a.members = {{0, 1}};
    RecoverySet x1b;
    x1b.members = {{1, 1}, {2, 1}};
    RecoverySet x1c;  // a^2*(x1 + a*x2) + a*(x1 + a^2*x2) = x1
    x1c.members = {{3, a2}, {4, a}};
    RecoverySet x2a;
    x2a.members = {{1, 1}};
    RecoverySet x2b;
    x2b.members = {{0, 1}, {2, 1}};
    RecoverySet x2c;  // (x1 + a*x2) + (x1 + a^2*x2) = (a + a^2)*x2 = x2
    x2c.members = {{3, 1}, {4, 1}};
    std::vector<std::vector<RecoverySet>> w = {{x1a, x1b, x1c}, {x2a, x2b, x2c}};
    return make_pir_code(f, g, std::move(w), "gf4_five_two_code");
}

std::string pir_code_to_json(const PirCode& code) {
    nlohmann::json j;
    j["q"] = code.field.q();
    j["s"] = code.s;
    j["m"] = code.m;
    std::vector<unsigned> flat;
    flat.reserve(code.s * code.m);
    for (size_t r = 0; r < code.s; ++r)
        for (size_t c = 0; c < code.m; ++c) flat.push_back(code.g.at(r, c));
    j["G"] = flat;
    nlohmann::json wits = nlohmann::json::array();
    for (const auto& sets : code.witnesses) {
        nlohmann::json per_bit = nlohmann::json::array();
        for (const auto& rs : sets) {
            nlohmann::json one = nlohmann::json::array();
            for (auto [col, coef] : rs.members)
                one.push_back({col, unsigned(coef)});
            per_bit.push_back(one);
        }
        wits.push_back(per_bit);
    }
    j["witnesses"] = wits;
    return j.dump(2);
}

PirCode pir_code_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("PirCode JSON: ") + e.what());
    }
    try {
        Field f = Field::of_order(j.at("q").get<unsigned>());
        size_t s = j.at("s").get<size_t>(), m = j.at("m").get<size_t>();
        auto flat = j.at("G").get<std::vector<unsigned>>();
        if (flat.size() != s * m) throw ParseError("PirCode JSON: G has wrong size");
        Matrix g(f, s, m);
        for (size_t r = 0; r < s; ++r)
            for (size_t c = 0; c < m; ++c) {
                unsigned v = flat[r * m + c];
                if (v >= f.q()) throw ParseError("PirCode JSON: entry out of field");
                g.set(r, c, Elem(v));
            }
        std::vector<std::vector<RecoverySet>> w;
        for (const auto& per_bit : j.at("witnesses")) {
            std::vector<RecoverySet> sets;
            for (const auto& one : per_bit) {
                RecoverySet rs;
                for (const auto& pair : one)
                    rs.members.emplace_back(pair.at(0).get<std::uint32_t>(),
                                            Elem(pair.at(1).get<unsigned>()));
                sets.push_back(std::move(rs));
            }
            w.push_back(std::move(sets));
        }
        return make_pir_code(f, g, std::move(w), "pir_code_from_json");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("PirCode JSON: ") + e.what());
    }
}

}  // namespace pir
