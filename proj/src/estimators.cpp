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

#include "infsamp/estimators.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "infsamp/error.hpp"
#include "parallel_for.hpp"

namespace infsamp {

struct MarginalTable::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<std::uint64_t, SecondOrderEntry> entries;
};

MarginalTable::MarginalTable(const SampleSet& samples, std::size_t min_count)
    : min_count_(min_count), cache_(std::make_unique<Cache>()) {
  const std::size_t n = samples.num_nodes;
  const std::size_t m = samples.samples.size();
  if (m == 0) throw ValidationError("marginal estimates need at least 1 sample");
  if (m >= std::numeric_limits<std::uint32_t>::max())
    throw ValidationError("too many samples for 32-bit sample ids");

  values_.reserve(m);
  member_offsets_.assign(n + 1, 0);
  for (const auto& s : samples.samples) {
    values_.push_back(s.value);
    total_sum_ += s.value;
    for (NodeId v : s.seeds) {
      if (v >= n) throw ValidationError("sample seed out of range");
      ++member_offsets_[v + 1];
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    member_offsets_[v + 1] += member_offsets_[v];
  member_samples_.resize(member_offsets_.back());
  std::vector<std::size_t> cursor(member_offsets_.begin(),
                                  member_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < m; ++i)
    for (NodeId v : samples.samples[i].seeds)
      member_samples_[cursor[v]++] = i;

  sum_in_.assign(n, 0.0);
  first_.resize(n);
  detail::parallel_chunks(n, 256, [&](std::size_t, std::size_t begin,
                                      std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      double sum = 0.0;
      for (std::size_t j = member_offsets_[a]; j < member_offsets_[a + 1]; ++j)
        sum += values_[member_samples_[j]];
      sum_in_[a] = sum;
      FirstOrderEntry& entry = first_[a];
      entry.count_in = member_offsets_[a + 1] - member_offsets_[a];
      entry.count_out = m - entry.count_in;
      if (entry.count_in >= min_count_ && entry.count_out >= min_count_ &&
          entry.count_in > 0 && entry.count_out > 0)
        entry.estimate = sum / static_cast<double>(entry.count_in) -
                         (total_sum_ - sum) / static_cast<double>(entry.count_out);
    }
  });
}

MarginalTable::MarginalTable(MarginalTable&&) noexcept = default;
MarginalTable& MarginalTable::operator=(MarginalTable&&) noexcept = default;
MarginalTable::~MarginalTable() = default;

SecondOrderEntry MarginalTable::compute_second(NodeId a, NodeId b) const {
  // Samples containing both: merge of the two ascending membership lists.
  const std::uint32_t* pa = member_samples_.data() + member_offsets_[a];
  const std::uint32_t* const ea = member_samples_.data() + member_offsets_[a + 1];
  const std::uint32_t* pb = member_samples_.data() + member_offsets_[b];
  const std::uint32_t* const eb = member_samples_.data() + member_offsets_[b + 1];
  std::size_t both = 0;
  double sum_both = 0.0;
  while (pa != ea && pb != eb) {
    if (*pa < *pb) {
      ++pa;
    } else if (*pb < *pa) {
      ++pb;
    } else {
      ++both;
      sum_both += values_[*pa];
      ++pa;
      ++pb;
    }
  }
  SecondOrderEntry entry;
  entry.count_ab = both;
  entry.count_not_a_b = (member_offsets_[b + 1] - member_offsets_[b]) - both;
  if (entry.count_ab >= min_count_ && entry.count_not_a_b >= min_count_ &&
      entry.count_ab > 0 && entry.count_not_a_b > 0)
    entry.estimate =
        sum_both / static_cast<double>(entry.count_ab) -
        (sum_in_[b] - sum_both) / static_cast<double>(entry.count_not_a_b);
  return entry;
}

SecondOrderEntry MarginalTable::second(NodeId a, NodeId b) const {
  if (a == b)
    throw ValidationError("second-order contribution needs distinct nodes");
  if (a >= num_nodes() || b >= num_nodes())
    throw ValidationError("second-order query out of range");
  const std::uint64_t key = (std::uint64_t{a} << 32) | b;
  {
    std::shared_lock lock(cache_->mutex);
    const auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return it->second;
  }
  const SecondOrderEntry entry = compute_second(a, b);
  std::unique_lock lock(cache_->mutex);
  return cache_->entries.emplace(key, entry).first->second;
}

std::size_t MarginalTable::cached_pairs() const {
  std::shared_lock lock(cache_->mutex);
  return cache_->entries.size();
}

void write_marginals_csv(const MarginalTable& table, std::ostream& out) {
  out << "node,v1,count_in,count_out,flag\n";
  char buffer[64];
  for (NodeId v = 0; v < table.num_nodes(); ++v) {
    const auto& e = table.first(v);
    out << v << ',';
    if (e.estimate) {
      const auto [ptr, ec] =
          std::to_chars(buffer, buffer + sizeof buffer, *e.estimate);
      out << std::string_view(buffer, ptr - buffer);
    }
    out << ',' << e.count_in << ',' << e.count_out << ','
        << (e.insufficient() ? "insufficient" : "ok") << '\n';
  }
}

void write_marginals_csv(const MarginalTable& table,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), 0, "cannot open file for writing");
  write_marginals_csv(table, out);
}

}  // namespace infsamp
