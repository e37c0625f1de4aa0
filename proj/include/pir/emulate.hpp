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

#ifndef PIR_EMULATE_HPP_
#define PIR_EMULATE_HPP_

#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pir/pir_code.hpp"
#include "pir/protocol.hpp"

namespace pir {

/// The database as s zero-padded parts of part_len symbols each. External
/// indices are 0-based (the docs state the mapping to the 1-based
/// convention of the literature); reading a pad position returns 0.
struct Database {
    Field field;
    size_t n = 0;         // symbols before padding
    size_t parts = 0;     // s
    size_t part_len = 0;  // ceil(n / s)
    std::vector<Elem> content;  // padded to parts * part_len

    Database() : field(Field::gf2()) {}
    static Database from_symbols(const Field& f, std::vector<Elem> symbols, size_t parts);
    std::vector<Elem> part(size_t ell) const;
    size_t padded_n() const { return parts * part_len; }
};

/// Per-server coded chunks: (c_1..c_m) = (x_1..x_s) * G applied
/// symbol-by-symbol.
struct CodedStore {
    PirCode code;
    size_t part_len = 0;
    std::vector<std::vector<Elem>> chunks;  // [m][part_len]
};
CodedStore distribute(const Database& db, const PirCode& code);

/// What one server receives: the base-protocol index it must answer for
/// and the query vector. Uncovered servers get a uniform dummy envelope so
/// traffic is indistinguishable.
struct ServerEnvelope {
    std::uint8_t query_index = 0;  // sigma(j) carried in the request
    std::vector<Elem> query;
};

/// One retrieval: target decomposition, the permutation, per-server
/// envelopes (filled when RetrieveOptions::record_envelopes is set), and
/// exact bit accounting.
struct Session {
    size_t target = 0, part = 0, local = 0;
    std::vector<size_t> sigma;  // uniform permutation of [k]
    std::vector<ServerEnvelope> envelopes;       // [m]
    std::vector<char> covered;                   // [m]: inside a chosen witness set
    std::vector<char> contacted;                 // [m]: got a request at all
    std::vector<size_t> witness_choice;          // k chosen set indices (robust mode)
    size_t uploaded_bits = 0, downloaded_bits = 0, servers_contacted = 0;
};

struct RetrieveOptions {
    /// Exposition mode: every server returns all k per-index answers
    /// instead of the single sigma-selected one.
    bool k_tuple_answers = false;
    /// Copy the per-server envelopes into the Session (off by default;
    /// the exhaustive correctness sweeps run millions of sessions).
    bool record_envelopes = false;
    /// Fixed permutation (audits, traces); empty = draw uniformly.
    std::vector<size_t> sigma_override;
};

/// Coded-store emulation in memory: run the base protocol on
/// the local index, route query sigma(j) to every server of witness set j,
/// send uniform dummies elsewhere, combine answers with the witness
/// coefficients, un-permute, reconstruct.
std::pair<Elem, Session> retrieve(const CodedStore& store, const LinearPirProtocol& p,
                                  size_t i, RandomTape& tape, std::mt19937_64& session_rng,
                                  const RetrieveOptions& opts = {});

/// Static-failure robust variant: picks protocol-k witness sets untouched
/// by the failed servers (each failure kills at most one set per bit),
/// contacts only live servers.
std::pair<Elem, Session> retrieve_robust(const CodedStore& store,
                                         const LinearPirProtocol& p, size_t i,
                                         const std::set<size_t>& failed, RandomTape& tape,
                                         std::mt19937_64& session_rng,
                                         const RetrieveOptions& opts = {});

/// uploaded == m * U1(n/s) and downloaded == m * D1, bit-exact.
bool accounting_check(const Session& session, const LinearPirProtocol& p, size_t m,
                      size_t part_len, std::string* detail = nullptr);

/// Exact per-server envelope audit over the full tape x permutation space:
/// the multiset of (query index, query vector) envelopes seen by server h
/// must be identical for the two target indices, even across parts. Dummy
/// draws are folded in analytically with integer weights.
struct CodedAuditVerdict {
    bool identical = true;
    std::string detail;
};
CodedAuditVerdict coded_privacy_audit(const PirCode& code, const LinearPirProtocol& p,
                                      size_t part_len, size_t server_h, size_t i1,
                                      size_t i2, bool skip_sigma_for_regression = false);

/// Session planning shared by the in-memory engine and the wire client.
/// Queries are stored once; covered servers reference them by index and
/// dummies live in one pooled buffer, so planning does O(k + m) small
/// allocations rather than one vector per server.
struct SessionPlan {
    size_t part = 0, local = 0, part_len = 0;
    std::vector<size_t> sigma;
    std::vector<size_t> witness_choice;  // chosen set index per j in [k]
    std::vector<std::vector<Elem>> queries;  // base-protocol queries
    std::vector<Elem> dummy_pool;            // uncovered servers, concatenated
    struct PerServer {
        bool contacted = false;
        bool covered = false;
        size_t witness_j = 0;  // position in the chosen-list when covered
        std::uint8_t query_index = 0;
        size_t dummy_offset = 0;
    };
    std::vector<PerServer> servers;

    std::span<const Elem> query_of(size_t h) const {
        const PerServer& s = servers[h];
        if (s.covered) return queries[s.query_index];
        return {dummy_pool.data() + s.dummy_offset, part_len};
    }
};
SessionPlan plan_session(const PirCode& code, const LinearPirProtocol& p, size_t part_len,
                         size_t i, RandomTape& tape, std::mt19937_64& session_rng,
                         const std::set<size_t>& failed, const RetrieveOptions& opts);
Elem combine_answers(const PirCode& code, const LinearPirProtocol& p, size_t part_len,
                     const SessionPlan& plan, const std::vector<Elem>& answers);

}  // namespace pir

#endif  // PIR_EMULATE_HPP_
