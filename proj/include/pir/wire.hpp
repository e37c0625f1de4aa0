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

#ifndef PIR_WIRE_HPP_
#define PIR_WIRE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pir/gf.hpp"

namespace pir {

/// Frame layout (byte-exact):
///   4-byte big-endian length  (= payload size + 5)
///   1-byte kind
///   4-byte big-endian session id
///   payload
enum class FrameKind : std::uint8_t {
    kStoreChunk = 1,
    kQuery = 2,
    kAnswer = 3,
    kStatus = 4,
    kError = 5,
};

struct WireFrame {
    FrameKind kind = FrameKind::kStatus;
    std::uint32_t session = 0;
    std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> encode_frame(const WireFrame& f);

/// Decodes one frame from the front of buf; nullopt when incomplete,
/// ParseError on an unknown kind or inconsistent length.
std::optional<WireFrame> decode_frame(std::span<const std::uint8_t> buf,
                                      size_t& consumed);

/// Element packing: GF(2) vectors are bit-packed little-endian within
/// bytes; larger fields use one byte per element.
std::vector<std::uint8_t> pack_elems(const Field& f, std::span<const Elem> v);
std::vector<Elem> unpack_elems(const Field& f, std::span<const std::uint8_t> bytes,
                               size_t count);
size_t packed_size(const Field& f, size_t count);

/// QUERY payload: [1B query index][4B BE element count][packed elements].
struct QueryPayload {
    std::uint8_t query_index = 0;
    std::vector<Elem> query;
};
std::vector<std::uint8_t> encode_query_payload(const Field& f, const QueryPayload& q);
QueryPayload decode_query_payload(const Field& f, std::span<const std::uint8_t> p);

/// STORE_CHUNK payload: [2B BE server index][2B BE cell count]
/// [4B BE part length][cells, each packed separately].
struct StoreChunkPayload {
    std::uint16_t server_index = 0;
    std::vector<std::vector<Elem>> cells;
};
std::vector<std::uint8_t> encode_store_payload(const Field& f,
                                               const StoreChunkPayload& s);
StoreChunkPayload decode_store_payload(const Field& f, std::span<const std::uint8_t> p);

/// ANSWER payload: [2B BE answer count][packed elements].
std::vector<std::uint8_t> encode_answer_payload(const Field& f,
                                                std::span<const Elem> answers);
std::vector<Elem> decode_answer_payload(const Field& f, std::span<const std::uint8_t> p);

}  // namespace pir

#endif  // PIR_WIRE_HPP_
