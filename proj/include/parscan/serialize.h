// Copyright 2026 The parscan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Binary index file, format v1. All integers little-endian.
//
//   header   magic "PSCANIX\0" | u32 version | u64 n | u64 m | u8 measure
//            | u64 config digest
//   payload  similarities   u64 len, f64[len]
//            NO offsets     u64 len, u64[len]
//            NO vertices    u64 len, u32[len]
//            NO scores      u64 len, f64[len]
//            CO max_mu      u64
//            CO offsets     u64 len, u64[len]
//            CO vertices    u64 len, u32[len]
//            CO thresholds  u64 len, f64[len]
//   trailer  u32 CRC-32 of the payload bytes

#ifndef PARSCAN_SERIALIZE_H_
#define PARSCAN_SERIALIZE_H_

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "parscan/base.h"
#include "parscan/index.h"
#include "parscan/similarity.h"

namespace parscan {

inline constexpr std::array<char, 8> kIndexMagic = {'P', 'S', 'C', 'A',
                                                    'N', 'I', 'X', '\0'};
inline constexpr std::uint32_t kIndexFormatVersion = 1;

namespace internal {

class ByteWriter {
 public:
  void U8(std::uint8_t v) { bytes_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }

  template <typename T>
  void Array(const std::vector<T>& values) {
    U64(values.size());
    for (const T& v : values) {
      if constexpr (std::is_same_v<T, double>) {
        F64(v);
      } else if constexpr (sizeof(T) == 4) {
        U32(v);
      } else {
        U64(v);
      }
    }
  }

  std::string& bytes() { return bytes_; }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  void Need(std::size_t count) const {
    if (remaining() < count) {
      throw Error(ErrorCode::kTruncated, "index stream is truncated");
    }
  }
  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }

  template <typename T>
  std::vector<T> Array() {
    const std::uint64_t count = U64();
    const std::size_t width = std::is_same_v<T, double> ? 8 : sizeof(T);
    if (count > remaining() / width) {
      throw Error(ErrorCode::kTruncated, "array length exceeds stream size");
    }
    std::vector<T> values(count);
    for (auto& v : values) {
      if constexpr (std::is_same_v<T, double>) {
        v = F64();
      } else if constexpr (sizeof(T) == 4) {
        v = U32();
      } else {
        v = U64();
      }
    }
    return values;
  }

  std::string_view Take(std::size_t count) {
    Need(count);
    auto out = bytes_.substr(pos_, count);
    pos_ += count;
    return out;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

inline std::uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  const auto* data = reinterpret_cast<const Bytef*>(bytes.data());
  std::size_t left = bytes.size();
  while (left > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(left, 1U << 30));
    crc = crc32(crc, data, chunk);
    data += chunk;
    left -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

inline constexpr std::size_t kHeaderSize = 8 + 4 + 8 + 8 + 1 + 8;

}  // namespace internal

inline std::string SerializeIndex(const ScanIndex& index) {
  internal::ByteWriter header;
  for (char c : kIndexMagic) header.U8(static_cast<std::uint8_t>(c));
  header.U32(kIndexFormatVersion);
  header.U64(index.num_vertices);
  header.U64(index.num_edges);
  header.U8(static_cast<std::uint8_t>(index.measure));
  header.U64(index.config_digest);

  internal::ByteWriter payload;
  payload.Array(index.similarities.scores);
  payload.Array(index.neighbor_order.offsets);
  payload.Array(index.neighbor_order.vertices);
  payload.Array(index.neighbor_order.similarities);
  payload.U64(index.core_order.max_mu);
  payload.Array(index.core_order.offsets);
  payload.Array(index.core_order.vertices);
  payload.Array(index.core_order.thresholds);

  std::string out = std::move(header.bytes());
  const std::uint32_t crc = internal::Crc32(payload.bytes());
  out += payload.bytes();
  internal::ByteWriter trailer;
  trailer.U32(crc);
  out += trailer.bytes();
  return out;
}

inline void WriteIndex(const ScanIndex& index, std::ostream& out) {
  const std::string bytes = SerializeIndex(index);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "failed to write index");
}

inline ScanIndex DeserializeIndex(std::string_view bytes) {
  internal::ByteReader header(bytes);
  if (bytes.size() < kIndexMagic.size() ||
      std::memcmp(bytes.data(), kIndexMagic.data(), kIndexMagic.size()) != 0) {
    throw Error(ErrorCode::kVersion, "not a parscan index (bad magic)");
  }
  header.Take(kIndexMagic.size());
  const std::uint32_t version = header.U32();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::kVersion,
                "unsupported index format version " + std::to_string(version));
  }
  ScanIndex index;
  index.num_vertices = header.U64();
  index.num_edges = header.U64();
  const std::uint8_t measure = header.U8();
  if (measure > static_cast<std::uint8_t>(Measure::kApproxJaccard)) {
    throw Error(ErrorCode::kFormat, "unknown measure tag");
  }
  index.measure = static_cast<Measure>(measure);
  index.config_digest = header.U64();

  if (bytes.size() < internal::kHeaderSize + 4) {
    throw Error(ErrorCode::kTruncated, "index stream is truncated");
  }
  const std::string_view payload_bytes = bytes.substr(
      internal::kHeaderSize, bytes.size() - internal::kHeaderSize - 4);
  internal::ByteReader trailer(bytes.substr(bytes.size() - 4));
  const std::uint32_t stored_crc = trailer.U32();

  // Structural parse first so a short stream reports truncation rather than
  // a checksum mismatch.
  internal::ByteReader payload(payload_bytes);
  index.similarities.measure = index.measure;
  index.similarities.scores = payload.Array<double>();
  index.neighbor_order.offsets = payload.Array<EdgeIndex>();
  index.neighbor_order.vertices = payload.Array<VertexId>();
  index.neighbor_order.similarities = payload.Array<double>();
  index.core_order.max_mu = payload.U64();
  index.core_order.offsets = payload.Array<EdgeIndex>();
  index.core_order.vertices = payload.Array<VertexId>();
  index.core_order.thresholds = payload.Array<double>();
  if (internal::Crc32(payload_bytes) != stored_crc) {
    throw Error(ErrorCode::kChecksum, "index checksum mismatch");
  }
  if (payload.remaining() != 0) {
    throw Error(ErrorCode::kFormat, "trailing bytes after index payload");
  }

  const auto& no = index.neighbor_order;
  const auto& co = index.core_order;
  const std::uint64_t n = index.num_vertices;
  const std::uint64_t half = 2 * index.num_edges;
  const bool consistent =
      index.similarities.scores.size() == half &&
      no.offsets.size() == n + 1 && no.offsets.front() == 0 &&
      no.offsets.back() == n + half && no.vertices.size() == n + half &&
      no.similarities.size() == n + half && co.max_mu >= 1 &&
      co.offsets.size() == co.max_mu && co.offsets.front() == 0 &&
      co.offsets.back() == half && co.vertices.size() == half &&
      co.thresholds.size() == half;
  if (!consistent) {
    throw Error(ErrorCode::kFormat, "index arrays have inconsistent sizes");
  }
  return index;
}

inline ScanIndex ReadIndex(std::istream& in) {
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "failed to read index");
  return DeserializeIndex(bytes);
}

}  // namespace parscan

#endif  // PARSCAN_SERIALIZE_H_
