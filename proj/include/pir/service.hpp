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

#ifndef PIR_SERVICE_HPP_
#define PIR_SERVICE_HPP_

#include <atomic>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "pir/emulate.hpp"
#include "pir/wire.hpp"

namespace pir {

struct ServerConfig {
    Field field = Field::gf2();
    size_t protocol_k = 2;
    size_t server_index = 0;
};

/// One storage daemon's state machine: STORE_CHUNK freezes the coded cells,
/// QUERY answers with one inner product per stored cell, STATUS reports.
/// Answers are pure functions of (chunk, query); replays are byte-identical.
class PirServer {
public:
    explicit PirServer(const ServerConfig& cfg);
    WireFrame handle(const WireFrame& request);
    const ServerConfig& config() const { return cfg_; }
    const std::vector<std::uint32_t>& answered_sessions() const { return sessions_; }

private:
    ServerConfig cfg_;
    XorProtocol proto_;
    std::vector<std::vector<Elem>> cells_;
    bool stored_ = false;
    std::vector<std::uint32_t> sessions_;
    std::mutex mu_;
};

/// Request/response link to one server. Implementations count raw frame
/// bytes; payload information bits are accounted by the client from the
/// decoded payloads.
class Transport {
public:
    virtual ~Transport() = default;
    virtual WireFrame roundtrip(const WireFrame& request) = 0;
    struct Counters {
        std::uint64_t raw_up_bytes = 0, raw_down_bytes = 0, frames = 0;
    };
    Counters counters;
    /// optional: every encoded frame in order (transport-equivalence tests)
    std::vector<std::vector<std::uint8_t>>* byte_log = nullptr;
};

/// Same-process transport; still round-trips through the byte codec so the
/// byte stream matches TCP exactly.
class InProcessTransport : public Transport {
public:
    explicit InProcessTransport(PirServer& server) : server_(server) {}
    WireFrame roundtrip(const WireFrame& request) override;

private:
    PirServer& server_;
};

/// Blocking TCP daemon on 127.0.0.1; port 0 picks an ephemeral port.
class TcpServer {
public:
    TcpServer(PirServer& server, std::uint16_t port);
    ~TcpServer();
    std::uint16_t port() const { return port_; }
    void stop();

private:
    void accept_loop();
    PirServer& server_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    std::atomic<bool> stopping_{false};
    std::thread acceptor_;
    std::vector<std::thread> conns_;
    std::vector<int> conn_fds_;
    std::mutex mu_;
};

class TcpClientTransport : public Transport {
public:
    TcpClientTransport(const std::string& host, std::uint16_t port);
    ~TcpClientTransport() override;
    WireFrame roundtrip(const WireFrame& request) override;

private:
    int fd_ = -1;
};

struct ClientAccounting {
    std::uint64_t payload_up_bits = 0, payload_down_bits = 0;
    std::uint64_t raw_up_bytes = 0, raw_down_bytes = 0;
    size_t servers_contacted = 0;
};

/// Pushes the coded chunks to their servers (one STORE_CHUNK each).
/// allow_missing skips null links instead of failing.
void client_store(const std::vector<Transport*>& links, const CodedStore& store,
                  std::uint32_t session = 0, bool allow_missing = false);

struct ClientResult {
    Elem value = 0;
    ClientAccounting acct;
};

/// Drives a coded retrieval over the links: plans the session, issues
/// the m query exchanges concurrently, joins deterministically, combines.
/// Links that are null count as failed servers; without `robust` any
/// failure is an error, with it the session proceeds when k intact witness
/// sets remain.
ClientResult client_retrieve(const std::vector<Transport*>& links, const PirCode& code,
                             const LinearPirProtocol& p, size_t part_len, size_t i,
                             RandomTape& tape, std::mt19937_64& session_rng,
                             bool robust = false, std::uint32_t session_id = 1);

}  // namespace pir

#endif  // PIR_SERVICE_HPP_
