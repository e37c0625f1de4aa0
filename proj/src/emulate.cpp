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

#include "pir/emulate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace pir {

Database Database::from_symbols(const Field& f, std::vector<Elem> symbols, size_t parts) {
    if (parts == 0) throw DomainError("Database: parts must be positive");
    Database db;
    db.field = f;
    db.n = symbols.size();
    db.parts = parts;
    db.part_len = (db.n + parts - 1) / parts;
    if (db.part_len == 0) db.part_len = 1;
    db.content = std::move(symbols);
    db.content.resize(db.parts * db.part_len, 0);
    return db;
}

std::vector<Elem> Database::part(size_t ell) const {
    if (ell >= parts) throw DomainError("Database: part index out of range");
    return {content.begin() + ell * part_len, content.begin() + (ell + 1) * part_len};
}

CodedStore distribute(const Database& db, const PirCode& code) {
    if (code.field != db.field) throw ShapeError("distribute: field mismatch");
    if (code.s != db.parts) throw ShapeError("distribute: partition arity mismatch");
    const Field& f = db.field;
    CodedStore st;
    st.code = code;
    st.part_len = db.part_len;
    st.chunks.assign(code.m, std::vector<Elem>(db.part_len, 0));
    for (size_t j = 0; j < code.m; ++j)
        for (size_t ell = 0; ell < code.s; ++ell) {
            Elem coef = code.g.at(ell, j);
            if (coef == 0) continue;
            for (size_t t = 0; t < db.part_len; ++t)
                st.chunks[j][t] =
                    f.add(st.chunks[j][t], f.mul(coef, db.content[ell * db.part_len + t]));
        }
    return st;
}

SessionPlan plan_session(const PirCode& code, const LinearPirProtocol& p, size_t part_len,
                         size_t i, RandomTape& tape, std::mt19937_64& session_rng,
                         const std::set<size_t>& failed, const RetrieveOptions& opts) {
    size_t k = p.servers();
    if (i >= code.s * part_len) throw DomainError("plan_session: index out of range");
    SessionPlan plan;
    plan.part = i / part_len;
    plan.local = i % part_len;
    plan.part_len = part_len;

    // choose k witness sets untouched by failed servers
    const auto& sets = code.witnesses[plan.part];
    for (size_t idx = 0; idx < sets.size() && plan.witness_choice.size() < k; ++idx) {
        bool hit = false;
        for (auto [col, coef] : sets[idx].members)
            if (failed.count(col)) {
                hit = true;
                break;
            }
        if (!hit) plan.witness_choice.push_back(idx);
    }
    if (plan.witness_choice.size() < k)
        throw DomainError("plan_session: fewer than k intact recovery sets");

    plan.queries = p.make_queries(part_len, plan.local, tape);

    plan.sigma = opts.sigma_override;
    if (plan.sigma.empty()) {
        plan.sigma.resize(k);
        std::iota(plan.sigma.begin(), plan.sigma.end(), 0);
        for (size_t a = k; a-- > 1;)
            std::swap(plan.sigma[a], plan.sigma[session_rng() % (a + 1)]);
    }
    if (plan.sigma.size() != k) throw ShapeError("plan_session: sigma must permute [k]");

    plan.servers.resize(code.m);
    for (size_t j = 0; j < k; ++j) {
        const RecoverySet& rs = sets[plan.witness_choice[j]];
        for (auto [col, coef] : rs.members) {
            auto& srv = plan.servers[col];
            srv.contacted = true;
            srv.covered = true;
            srv.witness_j = j;
            srv.query_index = std::uint8_t(plan.sigma[j]);
        }
    }
    const Field& f = code.field;
    size_t uncovered = 0;
    for (size_t h = 0; h < code.m; ++h)
        if (!plan.servers[h].covered && !failed.count(h)) ++uncovered;
    plan.dummy_pool.resize(uncovered * part_len);
    size_t off = 0;
    std::uint64_t bitbuf = 0;
    unsigned bitavail = 0;
    for (size_t h = 0; h < code.m; ++h) {
        if (failed.count(h)) continue;  // down: no frame at all
        auto& srv = plan.servers[h];
        if (srv.covered) continue;
        // dummy drawn from the same envelope marginal as a covered server
        srv.contacted = true;
        srv.query_index = std::uint8_t(session_rng() % k);
        srv.dummy_offset = off;
        if (f.q() == 2) {
            for (size_t t = 0; t < part_len; ++t) {
                if (bitavail == 0) {
                    bitbuf = session_rng();
                    bitavail = 64;
                }
                plan.dummy_pool[off + t] = Elem(bitbuf & 1);
                bitbuf >>= 1;
                --bitavail;
            }
        } else {
            for (size_t t = 0; t < part_len; ++t)
                plan.dummy_pool[off + t] = Elem(session_rng() % f.q());
        }
        off += part_len;
    }
    return plan;
}

Elem combine_answers(const PirCode& code, const LinearPirProtocol& p, size_t part_len,
                     const SessionPlan& plan, const std::vector<Elem>& answers) {
    const Field& f = code.field;
    size_t k = p.servers();
    const auto& sets = code.witnesses[plan.part];
    std::vector<Elem> hat(k, 0);  // indexed by witness-set position j
    for (size_t j = 0; j < k; ++j) {
        const RecoverySet& rs = sets[plan.witness_choice[j]];
        Elem acc = 0;
        for (auto [col, coef] : rs.members)
            acc = f.add(acc, f.mul(coef, answers[col]));
        hat[j] = acc;
    }
    // un-permute: position j answered query sigma(j)
    std::vector<Elem> prime(k, 0);
    for (size_t j = 0; j < k; ++j) prime[plan.sigma[j]] = hat[j];
    return p.reconstruct(part_len, plan.local, prime);
}

namespace {

std::pair<Elem, Session> run_session(const CodedStore& store, const LinearPirProtocol& p,
                                     size_t i, const std::set<size_t>& failed,
                                     RandomTape& tape, std::mt19937_64& session_rng,
                                     const RetrieveOptions& opts) {
    const PirCode& code = store.code;
    if (failed.empty() && p.servers() != code.k)
        throw ShapeError("retrieve: protocol k differs from code certificate");
    SessionPlan plan =
        plan_session(code, p, store.part_len, i, tape, session_rng, failed, opts);

    std::vector<Elem> answers(code.m, 0);
    Session session;
    session.target = i;
    session.part = plan.part;
    session.local = plan.local;
    session.sigma = plan.sigma;
    session.witness_choice = plan.witness_choice;
    if (opts.record_envelopes) session.envelopes.resize(code.m);
    session.covered.assign(code.m, 0);
    session.contacted.assign(code.m, 0);
    size_t k = p.servers();
    for (size_t h = 0; h < code.m; ++h) {
        const auto& srv = plan.servers[h];
        if (!srv.contacted) continue;
        session.contacted[h] = 1;
        session.covered[h] = srv.covered;
        std::span<const Elem> query = plan.query_of(h);
        if (opts.record_envelopes) {
            session.envelopes[h].query_index = srv.query_index;
            session.envelopes[h].query.assign(query.begin(), query.end());
        }
        ++session.servers_contacted;
        session.uploaded_bits += p.upload_bits(store.part_len);
        if (opts.k_tuple_answers) {
            // server returns every per-index answer; client picks one
            Elem kept = 0;
            for (size_t t = 0; t < k; ++t) {
                Elem a = p.answer(t, store.chunks[h], query);
                if (t == srv.query_index) kept = a;
            }
            answers[h] = kept;
            session.downloaded_bits += k * p.download_bits();
        } else {
            answers[h] = p.answer(srv.query_index, store.chunks[h], query);
            session.downloaded_bits += p.download_bits();
        }
    }
    Elem out = combine_answers(code, p, store.part_len, plan, answers);
    return {out, session};
}

}  // namespace

std::pair<Elem, Session> retrieve(const CodedStore& store, const LinearPirProtocol& p,
                                  size_t i, RandomTape& tape, std::mt19937_64& session_rng,
                                  const RetrieveOptions& opts) {
    return run_session(store, p, i, {}, tape, session_rng, opts);
}

std::pair<Elem, Session> retrieve_robust(const CodedStore& store,
                                         const LinearPirProtocol& p, size_t i,
                                         const std::set<size_t>& failed, RandomTape& tape,
                                         std::mt19937_64& session_rng,
                                         const RetrieveOptions& opts) {
    for (size_t h : failed)
        if (h >= store.code.m) throw DomainError("retrieve_robust: bad failed index");
    if (p.servers() > store.code.k)
        throw DomainError("retrieve_robust: protocol k exceeds code certificate");
    return run_session(store, p, i, failed, tape, session_rng, opts);
}

bool accounting_check(const Session& session, const LinearPirProtocol& p, size_t m,
                      size_t part_len, std::string* detail) {
    size_t want_up = m * p.upload_bits(part_len);
    size_t want_down = m * p.download_bits();
    bool ok = session.uploaded_bits == want_up && session.downloaded_bits == want_down &&
              session.servers_contacted == m;
    if (detail) {
        std::ostringstream os;
        os << "uploaded " << session.uploaded_bits << "/" << want_up << ", downloaded "
           << session.downloaded_bits << "/" << want_down << ", contacted "
           << session.servers_contacted << "/" << m;
        *detail = os.str();
    }
    return ok;
}

CodedAuditVerdict coded_privacy_audit(const PirCode& code, const LinearPirProtocol& p,
                                      size_t part_len, size_t server_h, size_t i1,
                                      size_t i2, bool skip_sigma_for_regression) {
    if (server_h >= code.m) throw DomainError("coded_privacy_audit: bad server");
    size_t k = p.servers();
    if (k != code.k) throw ShapeError("coded_privacy_audit: protocol k mismatch");
    const Field& f = code.field;

    size_t perm_count = 1;
    for (size_t t = 2; t <= k; ++t) perm_count *= t;
    TapeSpace space(f, p.tape_draws(part_len));
    if (space.size() * perm_count > (std::uint64_t(1) << 20))
        throw GuardError("coded_privacy_audit: tape x permutation space exceeds 2^20");

    // envelope distribution in units of 1/(k * q^part_len): a covered server
    // contributes that whole weight to one envelope, a dummy spreads one
    // unit over every envelope - recorded as a single wildcard counter.
    std::uint64_t env_space = k;
    for (size_t t = 0; t < part_len; ++t) env_space *= f.q();

    // weighted concrete-envelope counts plus a uniform remainder from the
    // dummy iterations (a dummy spreads one unit over every envelope)
    struct Dist {
        std::map<std::string, long long> concrete;
        long long wildcard = 0;
    };
    auto distribution = [&](size_t target) {
        Dist dist;
        std::vector<size_t> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (std::uint64_t t = 0; t < space.size(); ++t) {
                RandomTape tape = space.at(t);
                size_t part = target / part_len, local = target % part_len;
                auto queries = p.make_queries(part_len, local, tape);
                const auto& sets = code.witnesses[part];
                bool covered = false;
                for (size_t j = 0; j < k && !covered; ++j)
                    for (auto [col, coef] : sets[j].members)
                        if (col == server_h) {
                            std::string key;
                            key.push_back(char(perm[j]));
                            const auto& q = queries[perm[j]];
                            key.append(q.begin(), q.end());
                            dist.concrete[key] += (long long)env_space;
                            covered = true;
                            break;
                        }
                if (!covered) dist.wildcard += 1;
            }
            if (skip_sigma_for_regression) break;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return dist;
    };

    Dist d1 = distribution(i1), d2 = distribution(i2);
    // the true weight of envelope e is concrete[e] + wildcard; compare on
    // the union of keys, then the remainder (equal totals force it when
    // every concrete key matches)
    std::set<std::string> keys;
    for (auto& [key, v] : d1.concrete) keys.insert(key);
    for (auto& [key, v] : d2.concrete) keys.insert(key);
    for (const auto& key : keys) {
        long long w1 = d1.wildcard, w2 = d2.wildcard;
        auto it1 = d1.concrete.find(key), it2 = d2.concrete.find(key);
        if (it1 != d1.concrete.end()) w1 += it1->second;
        if (it2 != d2.concrete.end()) w2 += it2->second;
        if (w1 != w2)
            return CodedAuditVerdict{false, "envelope multisets differ between targets"};
    }
    if (keys.size() < env_space && d1.wildcard != d2.wildcard)
        return CodedAuditVerdict{false, "envelope multisets differ between targets"};
    return CodedAuditVerdict{true, "envelope multisets identical"};
}

}  // namespace pir
