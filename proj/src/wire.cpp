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

#include "pir/wire.hpp"

namespace pir {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, size_t at) {
    return (std::uint32_t(b[at]) << 24) | (std::uint32_t(b[at + 1]) << 16) |
           (std::uint32_t(b[at + 2]) << 8) | std::uint32_t(b[at + 3]);
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, size_t at) {
    return std::uint16_t((std::uint16_t(b[at]) << 8) | b[at + 1]);
}

}  // namespace

std::vector<std::uint8_t> encode_frame(const WireFrame& f) {
    std::vector<std::uint8_t> out;
    out.reserve(9 + f.payload.size());
    put_u32(out, std::uint32_t(f.payload.size() + 5));
    out.push_back(std::uint8_t(f.kind));
    put_u32(out, f.session);
    out.insert(out.end(), f.payload.begin(), f.payload.end());
    return out;
}

std::optional<WireFrame> decode_frame(std::span<const std::uint8_t> buf,
                                      size_t& consumed) {
    consumed = 0;
    if (buf.size() < 4) return std::nullopt;
    std::uint32_t length = get_u32(buf, 0);
    if (length < 5) throw ParseError("frame: length below header size");
    if (buf.size() < 4 + size_t(length)) return std::nullopt;
    std::uint8_t kind = buf[4];
    if (kind < 1 || kind > 5) throw ParseError("frame: unknown kind");
    WireFrame f;
    f.kind = FrameKind(kind);
    f.session = get_u32(buf, 5);
    f.payload.assign(buf.begin() + 9, buf.begin() + 4 + length);
    consumed = 4 + size_t(length);
    return f;
}

size_t packed_size(const Field& f, size_t count) {
    return f.q() == 2 ? (count + 7) / 8 : count;
}

std::vector<std::uint8_t> pack_elems(const Field& f, std::span<const Elem> v) {
    std::vector<std::uint8_t> out(packed_size(f, v.size()), 0);
    if (f.q() == 2) {
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i]) out[i / 8] |= std::uint8_t(1u << (i % 8));
    } else {
        for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    }
    return out;
}

std::vector<Elem> unpack_elems(const Field& f, std::span<const std::uint8_t> bytes,
                               size_t count) {
    if (bytes.size() < packed_size(f, count))
        throw ParseError("unpack_elems: truncated element data");
    std::vector<Elem> out(count);
    if (f.q() == 2) {
        for (size_t i = 0; i < count; ++i) out[i] = (bytes[i / 8] >> (i % 8)) & 1;
    } else {
        for (size_t i = 0; i < count; ++i) {
            if (bytes[i] >= f.q()) throw ParseError("unpack_elems: element out of field");
            out[i] = bytes[i];
        }
    }
    return out;
}

std::vector<std::uint8_t> encode_query_payload(const Field& f, const QueryPayload& q) {
    std::vector<std::uint8_t> out;
    out.push_back(q.query_index);
    put_u32(out, std::uint32_t(q.query.size()));
    auto packed = pack_elems(f, q.query);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

QueryPayload decode_query_payload(const Field& f, std::span<const std::uint8_t> p) {
    if (p.size() < 5) throw ParseError("query payload: truncated header");
    QueryPayload q;
    q.query_index = p[0];
    std::uint32_t count = get_u32(p, 1);
    if (count > (1u << 24)) throw ParseError("query payload: oversized query");
    q.query = unpack_elems(f, p.subspan(5), count);
    return q;
}

std::vector<std::uint8_t> encode_store_payload(const Field& f,
                                               const StoreChunkPayload& s) {
    std::vector<std::uint8_t> out;
    put_u16(out, s.server_index);
    put_u16(out, std::uint16_t(s.cells.size()));
    std::uint32_t part_len = s.cells.empty() ? 0 : std::uint32_t(s.cells[0].size());
    put_u32(out, part_len);
    for (const auto& cell : s.cells) {
        if (cell.size() != part_len)
            throw ShapeError("store payload: ragged cell lengths");
        auto packed = pack_elems(f, cell);
        out.insert(out.end(), packed.begin(), packed.end());
    }
    return out;
}

StoreChunkPayload decode_store_payload(const Field& f, std::span<const std::uint8_t> p) {
    if (p.size() < 8) throw ParseError("store payload: truncated header");
    StoreChunkPayload s;
    s.server_index = get_u16(p, 0);
    std::uint16_t cells = get_u16(p, 2);
    std::uint32_t part_len = get_u32(p, 4);
    if (std::uint64_t(cells) * part_len > (1u << 24))
        throw ParseError("store payload: oversized chunk");
    size_t off = 8, step = packed_size(f, part_len);
    for (std::uint16_t c = 0; c < cells; ++c) {
        s.cells.push_back(unpack_elems(f, p.subspan(off), part_len));
        off += step;
    }
    return s;
}

std::vector<std::uint8_t> encode_answer_payload(const Field& f,
                                                std::span<const Elem> answers) {
    std::vector<std::uint8_t> out;
    put_u16(out, std::uint16_t(answers.size()));
    auto packed = pack_elems(f, answers);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

std::vector<Elem> decode_answer_payload(const Field& f, std::span<const std::uint8_t> p) {
    if (p.size() < 2) throw ParseError("answer payload: truncated header");
    std::uint16_t count = get_u16(p, 0);
    return unpack_elems(f, p.subspan(2), count);
}

}  // namespace pir
