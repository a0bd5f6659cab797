// Copyright 2026 The infsamp Authors.
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

// Independent Bernoulli selection of node pairs inside and across blocks.
// Shared by the structural generators and the redrawn-graph cascade model.

#pragma once

#include <cmath>
#include <cstdint>

#include "infsamp/graph.hpp"
#include "infsamp/rng.hpp"

namespace infsamp::detail {

inline constexpr std::size_t kBernoulliMaxBlock = 10'000;

inline bool use_skip(EdgeSampling sampling, std::uint64_t pair_count) {
  switch (sampling) {
    case EdgeSampling::kBernoulli:
      return false;
    case EdgeSampling::kGeometricSkip:
      return true;
    case EdgeSampling::kAuto:
      break;
  }
  constexpr std::uint64_t limit =
      std::uint64_t{kBernoulliMaxBlock} * (kBernoulliMaxBlock - 1) / 2;
  return pair_count > limit;
}

// Calls on_pair(i, j) for each selected index pair 0 <= i < j < size,
// in increasing (i, j) order.
template <class OnPair>
void sample_triangle(std::size_t size, double p, Rng& rng, EdgeSampling sampling,
                     OnPair&& on_pair) {
  if (size < 2 || p <= 0.0) return;
  const std::uint64_t total = std::uint64_t{size} * (size - 1) / 2;
  if (p >= 1.0) {
    for (std::size_t i = 0; i + 1 < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) on_pair(i, j);
    return;
  }
  if (!use_skip(sampling, total)) {
    for (std::size_t i = 0; i + 1 < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j)
        if (rng.bernoulli(p)) on_pair(i, j);
    return;
  }
  const double log1m_p = std::log1p(-p);
  std::size_t row = 0;
  std::uint64_t row_start = 0;
  std::uint64_t idx = rng.geometric_skip(log1m_p);
  while (idx < total) {
    while (idx >= row_start + (size - 1 - row)) {
      row_start += size - 1 - row;
      ++row;
    }
    on_pair(row, row + 1 + static_cast<std::size_t>(idx - row_start));
    const std::uint64_t skip = rng.geometric_skip(log1m_p);
    if (skip >= total - idx) break;
    idx += 1 + skip;
  }
}

// Calls on_pair(i, j) for each selected (i, j) in [0,rows) x [0,cols).
template <class OnPair>
void sample_rectangle(std::size_t rows, std::size_t cols, double p, Rng& rng,
                      EdgeSampling sampling, OnPair&& on_pair) {
  if (rows == 0 || cols == 0 || p <= 0.0) return;
  const std::uint64_t total = std::uint64_t{rows} * cols;
  if (p >= 1.0) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) on_pair(i, j);
    return;
  }
  if (!use_skip(sampling, total)) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (rng.bernoulli(p)) on_pair(i, j);
    return;
  }
  const double log1m_p = std::log1p(-p);
  std::uint64_t idx = rng.geometric_skip(log1m_p);
  while (idx < total) {
    on_pair(static_cast<std::size_t>(idx / cols),
            static_cast<std::size_t>(idx % cols));
    const std::uint64_t skip = rng.geometric_skip(log1m_p);
    if (skip >= total - idx) break;
    idx += 1 + skip;
  }
}

// Visits every selected node pair of a block model: each community's
// internal pairs with intra_p(c), then every community pair (a < b) with
// inter_p. on_pair receives node ids and the community of the first node
// (or of both for intra pairs) plus whether the pair is inter-community.
template <class IntraP, class OnPair>
void sample_block_pairs(const CommunityLayout& layout, IntraP&& intra_p,
                        double inter_p, Rng& rng, EdgeSampling sampling,
                        OnPair&& on_pair) {
  const std::size_t blocks = layout.num_communities();
  for (std::size_t c = 0; c < blocks; ++c) {
    const auto members = layout.members(c);
    sample_triangle(members.size(), intra_p(c), rng, sampling,
                    [&](std::size_t i, std::size_t j) {
                      on_pair(members[i], members[j], c, false);
                    });
  }
  if (inter_p <= 0.0) return;
  for (std::size_t a = 0; a < blocks; ++a) {
    const auto ma = layout.members(a);
    for (std::size_t b = a + 1; b < blocks; ++b) {
      const auto mb = layout.members(b);
      sample_rectangle(ma.size(), mb.size(), inter_p, rng, sampling,
                       [&](std::size_t i, std::size_t j) {
                         on_pair(ma[i], mb[j], a, true);
                       });
    }
  }
}

}  // namespace infsamp::detail
