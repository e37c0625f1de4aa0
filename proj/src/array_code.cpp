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

#include "pir/array_code.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <functional>
#include <map>
#include <numeric>

#include "json.hpp"
#include "pir/oracle.hpp"

namespace pir {

namespace {

std::vector<std::vector<std::uint32_t>> subsets_of_size(unsigned n, unsigned w) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> comb(w);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        out.push_back(comb);
        int j = int(w) - 1;
        while (j >= 0 && comb[j] == n - w + j) --j;
        if (j < 0) break;
        ++comb[j];
        for (size_t t = j + 1; t < w; ++t) comb[t] = comb[t - 1] + 1;
    }
    return out;
}

unsigned long long binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    unsigned long long r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// ---------------------------------------------------------------------------
// Resolution of all r-subsets of [n] (r | n) into parallel classes of n/r
// disjoint blocks, built one point at a time; the per-step assignment is an
// integral flow, found by BFS augmentation. Deterministic.

class MaxFlow {
public:
    explicit MaxFlow(size_t nodes) : head_(nodes, -1) {}
    void add_edge(size_t a, size_t b, long long cap) {
        edges_.push_back({b, head_[a], cap});
        head_[a] = int(edges_.size()) - 1;
        edges_.push_back({a, head_[b], 0});
        head_[b] = int(edges_.size()) - 1;
    }
    long long run(size_t s, size_t t) {
        long long total = 0;
        while (true) {
            std::vector<int> prev_edge(head_.size(), -1);
            std::vector<size_t> queue{s};
            prev_edge[s] = -2;
            for (size_t qi = 0; qi < queue.size() && prev_edge[t] == -1; ++qi) {
                size_t u = queue[qi];
                for (int e = head_[u]; e != -1; e = edges_[e].next) {
                    if (edges_[e].cap <= 0 || prev_edge[edges_[e].to] != -1) continue;
                    prev_edge[edges_[e].to] = e;
                    queue.push_back(edges_[e].to);
                }
            }
            if (prev_edge[t] == -1) return total;
            long long push = LLONG_MAX;
            for (size_t u = t; u != s;) {
                int e = prev_edge[u];
                push = std::min(push, edges_[e].cap);
                u = edges_[e ^ 1].to;
            }
            for (size_t u = t; u != s;) {
                int e = prev_edge[u];
                edges_[e].cap -= push;
                edges_[e ^ 1].cap += push;
                u = edges_[e ^ 1].to;
            }
            total += push;
        }
    }
    long long flow_on(int edge_id) const { return edges_[edge_id ^ 1].cap; }

    struct Edge {
        size_t to;
        int next;
        long long cap;
    };
    std::vector<Edge> edges_;
    std::vector<int> head_;
};

std::vector<std::vector<std::uint32_t>> resolve_uniform(unsigned n, unsigned r) {
    if (n % r != 0) throw DomainError("resolve_uniform: r must divide n");
    size_t classes = size_t(binom(n - 1, r - 1));
    size_t per_class = n / r;
    // partial edges per class, as sorted subsets of the processed points
    std::vector<std::vector<std::vector<std::uint32_t>>> state(
        classes, std::vector<std::vector<std::uint32_t>>(per_class));
    for (unsigned v = 0; v < n; ++v) {
        // distinct partial-edge shapes present now
        std::map<std::vector<std::uint32_t>, size_t> shape_id;
        for (const auto& cls : state)
            for (const auto& pe : cls)
                if (pe.size() < r) shape_id.emplace(pe, 0);
        size_t sid = 0;
        for (auto& [shape, id] : shape_id) id = sid++;

        // nodes: source, classes, shapes, sink
        size_t source = 0, first_class = 1, first_shape = 1 + classes;
        size_t sink = first_shape + sid;
        MaxFlow flow(sink + 1);
        std::vector<std::vector<int>> class_edge(classes);
        for (size_t c = 0; c < classes; ++c) {
            flow.add_edge(source, first_class + c, 1);
            std::map<size_t, bool> linked;
            for (const auto& pe : state[c]) {
                if (pe.size() >= r) continue;
                size_t id = shape_id.at(pe);
                if (linked[id]) continue;
                linked[id] = true;
                class_edge[c].push_back(int(flow.edges_.size()));
                flow.add_edge(first_class + c, first_shape + id, 1);
            }
        }
        for (auto& [shape, id] : shape_id) {
            // how many copies of shape must absorb point v
            long long need = (long long)binom(n - v - 1, r - unsigned(shape.size()) - 1);
            flow.add_edge(first_shape + id, sink, need);
        }
        long long pushed = flow.run(source, sink);
        if (pushed != (long long)classes)
            throw DomainError("resolve_uniform: augmentation step infeasible");

        for (size_t c = 0; c < classes; ++c) {
            // exactly one outgoing class edge carries flow
            const std::vector<std::uint32_t>* chosen = nullptr;
            for (int eid : class_edge[c]) {
                if (flow.flow_on(eid) == 0) continue;
                size_t shape_node = flow.edges_[eid].to - first_shape;
                for (auto& [shape, id] : shape_id)
                    if (id == shape_node) {
                        chosen = &shape;
                        break;
                    }
                break;
            }
            if (!chosen) throw DomainError("resolve_uniform: class left unassigned");
            for (auto& pe : state[c])
                if (pe == *chosen && pe.size() < r) {
                    pe.push_back(v);
                    break;
                }
        }
    }
    // flatten: every class is a partition of [n] into r-subsets
    std::vector<std::vector<std::uint32_t>> partitions;
    std::map<std::vector<std::uint32_t>, int> seen;
    for (auto& cls : state) {
        std::sort(cls.begin(), cls.end());
        std::vector<std::uint32_t> flat;
        for (auto& pe : cls) {
            if (pe.size() != r) throw DomainError("resolve_uniform: ragged class");
            seen[pe]++;
            flat.insert(flat.end(), pe.begin(), pe.end());
        }
        partitions.push_back(flat);
    }
    if (seen.size() != binom(n, r))
        throw DomainError("resolve_uniform: blocks are not all distinct");
    for (auto& [block, cnt] : seen)
        if (cnt != 1) throw DomainError("resolve_uniform: block repeated");
    std::sort(partitions.begin(), partitions.end());
    return partitions;
}

}  // namespace

ArrayCode apir(unsigned t) {
    if (t < 2 || t > 3)
        throw DomainError("apir: t in {2, 3} (larger t needs resolutions the "
                          "construction does not provide)");
    unsigned s_total = t * (t + 1);
    ArrayCode code;
    code.m1 = t;
    code.s_total = s_total;

    auto singles = subsets_of_size(s_total, t);  // lexicographic
    for (const auto& sub : singles) {
        std::vector<ArrayCell> col;
        for (std::uint32_t b : sub) col.push_back(ArrayCell{{b}});
        code.cells.push_back(std::move(col));
    }
    size_t num_singles = singles.size();

    auto partitions = resolve_uniform(s_total, t + 1);
    std::map<std::vector<std::uint32_t>, std::pair<std::uint32_t, std::uint32_t>> sum_cell;
    for (const auto& flat : partitions) {
        std::vector<ArrayCell> col;
        for (unsigned b = 0; b < t; ++b) {
            std::vector<std::uint32_t> block(flat.begin() + b * (t + 1),
                                             flat.begin() + (b + 1) * (t + 1));
            sum_cell[block] = {std::uint32_t(code.cells.size()), b};
            col.push_back(ArrayCell{block});
        }
        code.cells.push_back(std::move(col));
    }
    code.m2 = code.cells.size();
    code.k = num_singles;

    std::map<std::vector<std::uint32_t>, std::uint32_t> single_col;
    for (std::uint32_t c = 0; c < num_singles; ++c) single_col[singles[c]] = c;

    code.witnesses.assign(s_total, {});
    for (std::uint32_t bit = 0; bit < s_total; ++bit) {
        // single columns containing the bit: one cell suffices
        for (std::uint32_t c = 0; c < num_singles; ++c) {
            const auto& sub = singles[c];
            auto pos = std::find(sub.begin(), sub.end(), bit);
            if (pos == sub.end()) continue;
            ArrayWitness w;
            w.columns = {c};
            w.recipe = {{c, std::uint32_t(pos - sub.begin())}};
            code.witnesses[bit].push_back(std::move(w));
        }
        // single columns avoiding the bit, paired with the unique sum cell
        // holding (subset + bit)
        for (std::uint32_t c = 0; c < num_singles; ++c) {
            const auto& sub = singles[c];
            if (std::find(sub.begin(), sub.end(), bit) != sub.end()) continue;
            std::vector<std::uint32_t> block = sub;
            block.push_back(bit);
            std::sort(block.begin(), block.end());
            auto it = sum_cell.find(block);
            if (it == sum_cell.end())
                throw DomainError("apir: missing sum cell for a (t+1)-subset");
            ArrayWitness w;
            w.columns = {c, it->second.first};
            for (std::uint32_t cell = 0; cell < t; ++cell) w.recipe.push_back({c, cell});
            w.recipe.push_back({it->second.first, it->second.second});
            code.witnesses[bit].push_back(std::move(w));
        }
    }
    ArrayVerifyReport rep = array_verify(code);
    if (!rep.ok) throw DomainError("apir: verification failed: " + rep.reason);
    return code;
}

ArrayCode example_2x25() { return apir(2); }

ArrayVerifyReport array_verify(const ArrayCode& code) {
    auto fail = [](size_t bit, size_t wit, const std::string& why) {
        return ArrayVerifyReport{false, why, bit, wit};
    };
    if (code.cells.size() != code.m2) return fail(0, 0, "column count mismatch");
    for (const auto& col : code.cells)
        if (col.size() != code.m1) return fail(0, 0, "a column does not hold m1 cells");
    if (code.witnesses.size() != code.s_total)
        return fail(0, 0, "witness lists must cover every bit");
    for (size_t bit = 0; bit < code.s_total; ++bit) {
        const auto& wits = code.witnesses[bit];
        if (wits.size() != code.k) return fail(bit, 0, "expected exactly k witnesses");
        std::vector<char> used(code.m2, 0);
        for (size_t wi = 0; wi < wits.size(); ++wi) {
            const ArrayWitness& w = wits[wi];
            if (w.columns.empty()) return fail(bit, wi, "witness without columns");
            for (std::uint32_t c : w.columns) {
                if (c >= code.m2) return fail(bit, wi, "column out of range");
                if (used[c]) return fail(bit, wi, "witness columns not disjoint");
                used[c] = 1;
            }
            std::uint64_t sum = 0;
            for (auto [c, cell] : w.recipe) {
                if (std::find(w.columns.begin(), w.columns.end(), c) == w.columns.end())
                    return fail(bit, wi, "recipe uses an undeclared column");
                if (cell >= code.m1) return fail(bit, wi, "cell index out of range");
                for (std::uint32_t b : code.cells[c][cell].bits)
                    sum ^= std::uint64_t(1) << b;
            }
            if (sum != (std::uint64_t(1) << bit))
                return fail(bit, wi, "recipe does not evaluate to the bit");
        }
    }
    return ArrayVerifyReport{};
}

size_t array_max_k(const ArrayCode& code, size_t i) {
    if (code.m2 > 30) throw GuardError("array_max_k: m2 > 30");
    if (i >= code.s_total) throw DomainError("array_max_k: bit out of range");
    if (code.s_total > 16) throw GuardError("array_max_k: s_total too large");
    // span membership over GF(2)^s_total, columns contribute all their cells
    std::vector<std::vector<std::uint32_t>> colvecs(code.m2);
    for (size_t c = 0; c < code.m2; ++c)
        for (const auto& cell : code.cells[c]) {
            std::uint32_t v = 0;
            for (std::uint32_t b : cell.bits) v |= std::uint32_t(1) << b;
            colvecs[c].push_back(v);
        }
    struct Basis {
        std::uint32_t by_high[16] = {};
        void insert(std::uint32_t v) {
            while (v) {
                int h = 31 - std::countl_zero(v);
                if (!by_high[h]) {
                    by_high[h] = v;
                    return;
                }
                v ^= by_high[h];
            }
        }
        bool contains(std::uint32_t v) const {
            while (v) {
                int h = 31 - std::countl_zero(v);
                if (!by_high[h]) return false;
                v ^= by_high[h];
            }
            return true;
        }
    };
    std::vector<Basis> suffix(code.m2 + 1);
    for (size_t p = code.m2; p-- > 0;) {
        suffix[p] = suffix[p + 1];
        for (std::uint32_t v : colvecs[p]) suffix[p].insert(v);
    }
    std::uint32_t target = std::uint32_t(1) << i;
    std::vector<std::uint64_t> sets;
    // a minimal recovery column set has at most s_total columns: a zero-sum
    // free cell representation of e_i has <= s_total cells and minimality
    // makes every column contribute to it
    size_t depth_cap = code.s_total;
    std::function<void(size_t, Basis&, std::uint64_t, size_t)> dfs =
        [&](size_t pos, Basis& cur, std::uint64_t mask, size_t used) {
            if (mask && cur.contains(target)) {
                sets.push_back(mask);
                return;
            }
            if (pos == code.m2 || used == depth_cap) return;
            // reachable at all?
            Basis merged = cur;
            for (size_t b = 0; b < 16; ++b)
                if (suffix[pos].by_high[b]) merged.insert(suffix[pos].by_high[b]);
            if (!merged.contains(target)) return;
            Basis with = cur;
            for (std::uint32_t v : colvecs[pos]) with.insert(v);
            dfs(pos + 1, with, mask | (std::uint64_t(1) << pos), used + 1);
            dfs(pos + 1, cur, mask, used);
        };
    Basis empty;
    dfs(0, empty, 0, 0);
    // drop dominated sets, then pack exactly
    std::sort(sets.begin(), sets.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t s : sets) {
        bool dom = false;
        for (std::uint64_t m : minimal)
            if ((s & m) == m) {
                dom = true;
                break;
            }
        if (!dom) minimal.push_back(s);
    }
    return max_disjoint_packing(minimal).count;
}

ArrayStore array_distribute(const Database& db, const ArrayCode& code) {
    if (db.parts != code.s_total) throw ShapeError("array_distribute: arity mismatch");
    if (db.field.q() != 2) throw ShapeError("array_distribute: GF(2) databases only");
    ArrayStore st;
    st.code = code;
    st.part_len = db.part_len;
    st.cells.resize(code.m2);
    for (size_t c = 0; c < code.m2; ++c) {
        st.cells[c].resize(code.m1);
        for (size_t r = 0; r < code.m1; ++r) {
            std::vector<Elem> data(db.part_len, 0);
            for (std::uint32_t b : code.cells[c][r].bits)
                for (size_t t = 0; t < db.part_len; ++t)
                    data[t] = Elem(data[t] ^ db.content[b * db.part_len + t]);
            st.cells[c][r] = std::move(data);
        }
    }
    return st;
}

std::pair<Elem, ArraySession> array_retrieve(const ArrayStore& store,
                                             const LinearPirProtocol& p, size_t i,
                                             RandomTape& tape,
                                             std::mt19937_64& session_rng) {
    const ArrayCode& code = store.code;
    size_t k = p.servers();
    if (k > code.k) throw DomainError("array_retrieve: protocol k exceeds certificate");
    if (i >= code.s_total * store.part_len)
        throw DomainError("array_retrieve: index out of range");
    size_t bit = i / store.part_len, local = i % store.part_len;

    auto queries = p.make_queries(store.part_len, local, tape);
    std::vector<size_t> sigma(k);
    std::iota(sigma.begin(), sigma.end(), 0);
    for (size_t a = k; a-- > 1;) std::swap(sigma[a], sigma[session_rng() % (a + 1)]);

    // column -> assigned base-protocol index
    std::vector<int> assigned(code.m2, -1);
    const auto& wits = code.witnesses[bit];
    for (size_t j = 0; j < k; ++j)
        for (std::uint32_t c : wits[j].columns) assigned[c] = int(sigma[j]);
    for (size_t c = 0; c < code.m2; ++c)
        if (assigned[c] < 0) assigned[c] = int(session_rng() % k);

    ArraySession session;
    // every column answers once per stored cell
    std::vector<std::vector<Elem>> answers(code.m2);
    for (size_t c = 0; c < code.m2; ++c) {
        const std::vector<Elem>& q = queries[assigned[c]];
        for (size_t r = 0; r < code.m1; ++r)
            answers[c].push_back(p.answer(size_t(assigned[c]), store.cells[c][r], q));
        ++session.servers_contacted;
        session.uploaded_bits += p.upload_bits(store.part_len);
        session.downloaded_bits += code.m1 * p.download_bits();
    }

    std::vector<Elem> hat(k, 0);
    for (size_t j = 0; j < k; ++j) {
        Elem acc = 0;
        for (auto [c, cell] : wits[j].recipe) acc = Elem(acc ^ answers[c][cell]);
        hat[j] = acc;
    }
    std::vector<Elem> prime(k, 0);
    for (size_t j = 0; j < k; ++j) prime[sigma[j]] = hat[j];
    Elem out = p.reconstruct(store.part_len, local, prime);
    return {out, session};
}

std::string array_code_to_json(const ArrayCode& code) {
    nlohmann::json j;
    j["m1"] = code.m1;
    j["m2"] = code.m2;
    j["s_total"] = code.s_total;
    j["k"] = code.k;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& col : code.cells) {
        nlohmann::json jc = nlohmann::json::array();
        for (const auto& cell : col) jc.push_back(cell.bits);
        cells.push_back(jc);
    }
    j["cells"] = cells;
    nlohmann::json wits = nlohmann::json::array();
    for (const auto& per_bit : code.witnesses) {
        nlohmann::json jb = nlohmann::json::array();
        for (const auto& w : per_bit) {
            nlohmann::json jw;
            jw["columns"] = w.columns;
            nlohmann::json recipe = nlohmann::json::array();
            for (auto [c, cell] : w.recipe) recipe.push_back({c, cell});
            jw["recipe"] = recipe;
            jb.push_back(jw);
        }
        wits.push_back(jb);
    }
    j["witnesses"] = wits;
    return j.dump(2);
}

ArrayCode array_code_from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        ArrayCode code;
        code.m1 = j.at("m1").get<size_t>();
        code.m2 = j.at("m2").get<size_t>();
        code.s_total = j.at("s_total").get<size_t>();
        code.k = j.at("k").get<size_t>();
        for (const auto& jc : j.at("cells")) {
            std::vector<ArrayCell> col;
            for (const auto& cell : jc)
                col.push_back(ArrayCell{cell.get<std::vector<std::uint32_t>>()});
            code.cells.push_back(std::move(col));
        }
        for (const auto& jb : j.at("witnesses")) {
            std::vector<ArrayWitness> per_bit;
            for (const auto& jw : jb) {
                ArrayWitness w;
                w.columns = jw.at("columns").get<std::vector<std::uint32_t>>();
                for (const auto& pr : jw.at("recipe"))
                    w.recipe.emplace_back(pr.at(0).get<std::uint32_t>(),
                                          pr.at(1).get<std::uint32_t>());
                per_bit.push_back(std::move(w));
            }
            code.witnesses.push_back(std::move(per_bit));
        }
        ArrayVerifyReport rep = array_verify(code);
        if (!rep.ok) throw ParseError("array JSON: invalid code: " + rep.reason);
        return code;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("array JSON: ") + e.what());
    }
}

}  // namespace pir
