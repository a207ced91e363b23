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

// Core vocabulary types, the library error type, and thread-count control.

#ifndef PARSCAN_BASE_H_
#define PARSCAN_BASE_H_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parscan {

using VertexId = std::uint32_t;
// Index into a flat per-half-edge array (neighbors, weights, similarities).
using EdgeIndex = std::uint64_t;

inline constexpr VertexId kInvalidVertex =
    std::numeric_limits<VertexId>::max();

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kIo,
  kFormat,
  kVersion,
  kTruncated,
  kChecksum,
  kUnsupported,
  kSizeGuard,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kFormat:
      return "format";
    case ErrorCode::kVersion:
      return "version";
    case ErrorCode::kTruncated:
      return "truncated";
    case ErrorCode::kChecksum:
      return "checksum";
    case ErrorCode::kUnsupported:
      return "unsupported";
    case ErrorCode::kSizeGuard:
      return "size_guard";
  }
  return "unknown";
}

// All library failures are reported with this exception; `code()` is the
// machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Sets the worker count used by every parallel loop in the library.
inline void SetNumThreads(int threads) {
  if (threads < 1) {
    throw Error(ErrorCode::kInvalidArgument, "thread count must be >= 1");
  }
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

inline int NumThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int HardwareThreads() {
#ifdef _OPENMP
  return omp_get_num_procs();
#else
  return 1;
#endif
}

}  // namespace parscan

#endif  // PARSCAN_BASE_H_
