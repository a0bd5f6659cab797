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

#pragma once

#include <algorithm>
#include <cstddef>

namespace infsamp::detail {

// Runs body(chunk, begin, end) over fixed-size chunks of [0, count). Chunk
// boundaries do not depend on the thread count, so per-chunk results
// combined in chunk order are reproducible.
template <class Body>
void parallel_chunks(std::size_t count, std::size_t chunk_size, Body&& body) {
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  const auto total = static_cast<long long>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long c = 0; c < total; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * chunk_size;
    body(static_cast<std::size_t>(c), begin, std::min(count, begin + chunk_size));
  }
}

inline std::size_t chunk_count(std::size_t count, std::size_t chunk_size) {
  return (count + chunk_size - 1) / chunk_size;
}

}  // namespace infsamp::detail
