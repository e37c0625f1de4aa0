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

#include "pir/service.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <future>

namespace pir {

namespace {

WireFrame error_frame(std::uint32_t session, const std::string& msg) {
    WireFrame f;
    f.kind = FrameKind::kError;
    f.session = session;
    f.payload.assign(msg.begin(), msg.end());
    return f;
}

}  // namespace

PirServer::PirServer(const ServerConfig& cfg)
    : cfg_(cfg), proto_(cfg.field, cfg.protocol_k) {}

WireFrame PirServer::handle(const WireFrame& request) {
    std::lock_guard<std::mutex> lock(mu_);
    try {
        switch (request.kind) {
            case FrameKind::kStoreChunk: {
                if (stored_) return error_frame(request.session, "chunk already stored");
                StoreChunkPayload p = decode_store_payload(cfg_.field, request.payload);
                if (p.server_index != cfg_.server_index)
                    return error_frame(request.session, "chunk addressed to another server");
                if (p.cells.empty())
                    return error_frame(request.session, "empty chunk");
                cells_ = std::move(p.cells);
                stored_ = true;
                WireFrame ok;
                ok.kind = FrameKind::kStatus;
                ok.session = request.session;
                ok.payload = {1};
                return ok;
            }
            case FrameKind::kQuery: {
                if (!stored_) return error_frame(request.session, "no chunk stored");
                QueryPayload q = decode_query_payload(cfg_.field, request.payload);
                if (q.query.size() != cells_[0].size())
                    return error_frame(request.session, "query length mismatch");
                if (q.query_index >= cfg_.protocol_k)
                    return error_frame(request.session, "query index out of range");
                std::vector<Elem> answers;
                answers.reserve(cells_.size());
                for (const auto& cell : cells_)
                    answers.push_back(proto_.answer(q.query_index, cell, q.query));
                sessions_.push_back(request.session);
                WireFrame out;
                out.kind = FrameKind::kAnswer;
                out.session = request.session;
                out.payload = encode_answer_payload(cfg_.field, answers);
                return out;
            }
            case FrameKind::kStatus: {
                WireFrame out;
                out.kind = FrameKind::kStatus;
                out.session = request.session;
                out.payload = {stored_ ? std::uint8_t(1) : std::uint8_t(0),
                               std::uint8_t(cfg_.protocol_k)};
                return out;
            }
            default:
                return error_frame(request.session, "unexpected frame kind");
        }
    } catch (const Error& e) {
        return error_frame(request.session, e.what());
    }
}

WireFrame InProcessTransport::roundtrip(const WireFrame& request) {
    // encode/decode on both legs so the byte stream is exactly what TCP
    // would carry
    auto up = encode_frame(request);
    counters.raw_up_bytes += up.size();
    ++counters.frames;
    if (byte_log) byte_log->push_back(up);
    size_t consumed = 0;
    auto decoded = decode_frame(up, consumed);
    if (!decoded || consumed != up.size())
        throw TransportError("in-process transport: self-decode failed");
    WireFrame response = server_.handle(*decoded);
    auto down = encode_frame(response);
    counters.raw_down_bytes += down.size();
    if (byte_log) byte_log->push_back(down);
    size_t consumed2 = 0;
    auto back = decode_frame(down, consumed2);
    if (!back) throw TransportError("in-process transport: response decode failed");
    return *back;
}

namespace {

void write_all(int fd, const std::uint8_t* data, size_t len) {
    while (len) {
        ssize_t w = ::write(fd, data, len);
        if (w <= 0) throw TransportError("socket write failed");
        data += w;
        len -= size_t(w);
    }
}

bool read_exact(int fd, std::uint8_t* data, size_t len) {
    while (len) {
        ssize_t r = ::read(fd, data, len);
        if (r == 0) return false;
        if (r < 0) throw TransportError("socket read failed");
        data += r;
        len -= size_t(r);
    }
    return true;
}

std::optional<WireFrame> read_frame(int fd) {
    std::uint8_t head[4];
    if (!read_exact(fd, head, 4)) return std::nullopt;
    std::uint32_t length = (std::uint32_t(head[0]) << 24) | (std::uint32_t(head[1]) << 16) |
                           (std::uint32_t(head[2]) << 8) | head[3];
    if (length < 5 || length > (1u << 26)) throw TransportError("bad frame length");
    std::vector<std::uint8_t> buf(4 + length);
    std::memcpy(buf.data(), head, 4);
    if (!read_exact(fd, buf.data() + 4, length)) return std::nullopt;
    size_t consumed = 0;
    auto f = decode_frame(buf, consumed);
    if (!f) throw TransportError("short frame after length prefix");
    return f;
}

}  // namespace

TcpServer::TcpServer(PirServer& server, std::uint16_t port) : server_(server) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw TransportError("socket() failed");
    int reuse = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof(reuse));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        ::close(listen_fd_);
        throw TransportError("bind() failed");
    }
    if (::listen(listen_fd_, 16) < 0) {
        ::close(listen_fd_);
        throw TransportError("listen() failed");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    acceptor_ = std::thread([this] { accept_loop(); });
}

void TcpServer::accept_loop() {
    while (!stopping_) {
        int conn = ::accept(listen_fd_, nullptr, nullptr);
        if (conn < 0) break;
        std::lock_guard<std::mutex> lock(mu_);
        conn_fds_.push_back(conn);
        conns_.emplace_back([this, conn] {
            while (true) {
                std::optional<WireFrame> req;
                try {
                    req = read_frame(conn);
                } catch (const Error&) {
                    break;
                }
                if (!req) break;
                WireFrame resp = server_.handle(*req);
                auto bytes = encode_frame(resp);
                try {
                    write_all(conn, bytes.data(), bytes.size());
                } catch (const Error&) {
                    break;
                }
            }
            ::close(conn);
        });
    }
}

void TcpServer::stop() {
    if (stopping_.exchange(true)) return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (acceptor_.joinable()) acceptor_.join();
    std::lock_guard<std::mutex> lock(mu_);
    // unblock connection threads still waiting on reads
    for (int fd : conn_fds_) ::shutdown(fd, SHUT_RDWR);
    for (auto& t : conns_)
        if (t.joinable()) t.join();
    conns_.clear();
    conn_fds_.clear();
}

TcpServer::~TcpServer() { stop(); }

TcpClientTransport::TcpClientTransport(const std::string& host, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw TransportError("socket() failed");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        throw TransportError("bad host address: " + host);
    }
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        ::close(fd_);
        fd_ = -1;
        throw TransportError("connect() failed to " + host + ":" + std::to_string(port));
    }
}

TcpClientTransport::~TcpClientTransport() {
    if (fd_ >= 0) ::close(fd_);
}

WireFrame TcpClientTransport::roundtrip(const WireFrame& request) {
    auto bytes = encode_frame(request);
    counters.raw_up_bytes += bytes.size();
    ++counters.frames;
    if (byte_log) byte_log->push_back(bytes);
    write_all(fd_, bytes.data(), bytes.size());
    auto resp = read_frame(fd_);
    if (!resp) throw TransportError("connection closed mid-exchange");
    auto down = encode_frame(*resp);
    counters.raw_down_bytes += down.size();
    if (byte_log) byte_log->push_back(down);
    return *resp;
}

void client_store(const std::vector<Transport*>& links, const CodedStore& store,
                  std::uint32_t session, bool allow_missing) {
    if (links.size() != store.code.m)
        throw ShapeError("client_store: need one link per server");
    for (size_t h = 0; h < links.size(); ++h) {
        if (!links[h]) {
            if (allow_missing) continue;
            throw TransportError("client_store: missing endpoint");
        }
        StoreChunkPayload p;
        p.server_index = std::uint16_t(h);
        p.cells = {store.chunks[h]};
        WireFrame f;
        f.kind = FrameKind::kStoreChunk;
        f.session = session;
        f.payload = encode_store_payload(store.code.field, p);
        WireFrame resp = links[h]->roundtrip(f);
        if (resp.kind != FrameKind::kStatus)
            throw TransportError("client_store: server " + std::to_string(h) +
                                 " rejected the chunk");
    }
}

ClientResult client_retrieve(const std::vector<Transport*>& links, const PirCode& code,
                             const LinearPirProtocol& p, size_t part_len, size_t i,
                             RandomTape& tape, std::mt19937_64& session_rng, bool robust,
                             std::uint32_t session_id) {
    if (links.size() != code.m)
        throw ShapeError("client_retrieve: need one link per server");
    std::set<size_t> failed;
    for (size_t h = 0; h < links.size(); ++h)
        if (!links[h]) failed.insert(h);
    if (!failed.empty() && !robust)
        throw TransportError("client_retrieve: endpoint unreachable (use robust mode)");
    if (robust) {
        if (p.servers() > code.k)
            throw DomainError("client_retrieve: protocol k exceeds code certificate");
    } else if (p.servers() != code.k) {
        throw ShapeError("client_retrieve: protocol k differs from code certificate");
    }

    RetrieveOptions opts;
    SessionPlan plan = plan_session(code, p, part_len, i, tape, session_rng, failed, opts);

    ClientResult out;
    // raw byte counts are reported per retrieval: snapshot the lifetime
    // transport counters and diff afterwards
    std::uint64_t raw_up_before = 0, raw_down_before = 0;
    for (Transport* link : links)
        if (link) {
            raw_up_before += link->counters.raw_up_bytes;
            raw_down_before += link->counters.raw_down_bytes;
        }
    std::vector<std::future<WireFrame>> futures(code.m);
    for (size_t h = 0; h < code.m; ++h) {
        if (!plan.servers[h].contacted) continue;
        QueryPayload q;
        q.query_index = plan.servers[h].query_index;
        auto query = plan.query_of(h);
        q.query.assign(query.begin(), query.end());
        WireFrame f;
        f.kind = FrameKind::kQuery;
        f.session = session_id;
        f.payload = encode_query_payload(code.field, q);
        out.acct.payload_up_bits += q.query.size() * p.elem_bits();
        Transport* link = links[h];
        futures[h] = std::async(std::launch::async,
                                [link, f(std::move(f))] { return link->roundtrip(f); });
    }
    std::vector<Elem> answers(code.m, 0);
    for (size_t h = 0; h < code.m; ++h) {
        if (!futures[h].valid()) continue;
        WireFrame resp = futures[h].get();
        if (resp.kind == FrameKind::kError)
            throw TransportError("server " + std::to_string(h) + " replied: " +
                                 std::string(resp.payload.begin(), resp.payload.end()));
        if (resp.kind != FrameKind::kAnswer)
            throw TransportError("server " + std::to_string(h) + ": unexpected frame");
        auto decoded = decode_answer_payload(code.field, resp.payload);
        if (decoded.size() != 1)
            throw TransportError("server " + std::to_string(h) + ": expected one answer");
        answers[h] = decoded[0];
        out.acct.payload_down_bits += decoded.size() * p.elem_bits();
        ++out.acct.servers_contacted;
    }
    for (Transport* link : links)
        if (link) {
            out.acct.raw_up_bytes += link->counters.raw_up_bytes;
            out.acct.raw_down_bytes += link->counters.raw_down_bytes;
        }
    out.acct.raw_up_bytes -= raw_up_before;
    out.acct.raw_down_bytes -= raw_down_before;
    out.value = combine_answers(code, p, part_len, plan, answers);
    return out;
}

}  // namespace pir
