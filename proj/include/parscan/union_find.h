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

#ifndef PARSCAN_UNION_FIND_H_
#define PARSCAN_UNION_FIND_H_

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "parscan/base.h"

namespace parscan {

// Sequential disjoint sets with union by rank and path compression.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), VertexId{0});
  }

  VertexId Find(VertexId x) {
    VertexId root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  bool Unite(VertexId a, VertexId b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<VertexId> parent_;
  std::vector<std::uint8_t> rank_;
};

// Lock-free disjoint sets safe for concurrent Unite/Find. Roots are linked
// by id (the larger root points to the smaller) with a CAS on the root's
// parent slot; Find does path halving with relaxed best-effort writes.
class ConcurrentUnionFind {
 public:
  explicit ConcurrentUnionFind(std::size_t n)
      : size_(n), parent_(std::make_unique<std::atomic<VertexId>[]>(n)) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      parent_[i].store(static_cast<VertexId>(i), std::memory_order_relaxed);
    }
  }

  VertexId Find(VertexId x) const {
    while (true) {
      VertexId p = parent_[x].load(std::memory_order_acquire);
      if (p == x) return x;
      VertexId gp = parent_[p].load(std::memory_order_acquire);
      if (p != gp) {
        // Halving: point x at its grandparent. Losing this race is harmless.
        parent_[x].compare_exchange_weak(p, gp, std::memory_order_acq_rel,
                                         std::memory_order_relaxed);
      }
      x = gp;
    }
  }

  void Unite(VertexId a, VertexId b) {
    while (true) {
      a = Find(a);
      b = Find(b);
      if (a == b) return;
      if (a < b) std::swap(a, b);
      VertexId expected = a;
      if (parent_[a].compare_exchange_strong(expected, b,
                                             std::memory_order_acq_rel,
                                             std::memory_order_relaxed)) {
        return;
      }
    }
  }

  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  std::unique_ptr<std::atomic<VertexId>[]> parent_;
};

}  // namespace parscan

#endif  // PARSCAN_UNION_FIND_H_
