// Copyright 2026 The Greenpack Authors
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

// Test-only reference implementations and generators. Nothing here calls
// into the packing or planning code it is used to check.

#ifndef GREENPACK_TESTS_FIXTURES_HPP
#define GREENPACK_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "greenpack/inventory.hpp"

namespace greenpack::testing {

inline ServerRecord make_server(std::string id, double utilization,
                                std::int64_t sockets = 1,
                                std::int64_t cores = 1,
                                double efficiency = 1.0) {
  ServerRecord r;
  r.id = std::move(id);
  r.make_model = "Generic 1U";
  r.sockets = sockets;
  r.cores_per_socket = cores;
  r.utilization = utilization;
  r.peak_efficiency = efficiency;
  r.os_name = "linux";
  r.patch_level = "p1";
  return r;
}

/// 250 servers at 3% tagged qa, 175 at 6% tagged sla, 75 at 10% tagged
/// realtime.
inline Inventory table1_inventory() {
  Inventory inv;
  inv.source = "generated";
  auto add = [&](const char* prefix, int n, double u, const char* tag) {
    for (int i = 0; i < n; ++i) {
      auto r = make_server(prefix + std::to_string(i), u, 2, 4);
      r.services = {tag};
      inv.servers.push_back(std::move(r));
    }
  };
  add("inn-", 250, 0.03, "qa");
  add("prd-", 175, 0.06, "sla");
  add("mc-", 75, 0.10, "realtime");
  return inv;
}

/// Minimum number of bins of size `limit` holding all `loads`, by
/// enumerating every set partition (restricted growth strings). Practical
/// up to about 10 items.
inline std::size_t brute_force_min_bins(const std::vector<double>& loads,
                                        double limit) {
  const std::size_t n = loads.size();
  if (n == 0) return 0;
  std::vector<std::size_t> block(n, 0);
  std::size_t best = n + 1;
  // block[i] <= 1 + max(block[0..i-1])
  auto evaluate = [&] {
    const std::size_t blocks = *std::max_element(block.begin(), block.end()) + 1;
    if (blocks >= best) return;
    std::vector<double> sums(blocks, 0.0);
    for (std::size_t i = 0; i < n; ++i) sums[block[i]] += loads[i];
    if (std::all_of(sums.begin(), sums.end(),
                    [&](double s) { return s <= limit; })) {
      best = blocks;
    }
  };
  std::vector<std::size_t> prefix_max(n, 0);
  while (true) {
    evaluate();
    // Next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0) {
      if (block[i] <= prefix_max[i - 1]) break;
      --i;
    }
    if (i == 0) break;
    ++block[i];
    prefix_max[i] = std::max(prefix_max[i - 1], block[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      block[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return best;
}

inline std::string random_token(std::mt19937_64& rng, std::size_t max_len = 8) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_ .,\"";
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) s.push_back(alphabet[pick(rng)]);
  return s;
}

/// A valid record with randomized contents. Free-text fields include commas
/// and quotes; list entries never contain the ';' separator.
inline ServerRecord random_server(std::mt19937_64& rng, std::size_t index) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> small(1, 8);
  std::uniform_int_distribution<int> count(0, 16);
  std::uniform_int_distribution<int> raid(-1, 5);
  ServerRecord r;
  r.id = "srv-" + std::to_string(index) + "-" + random_token(rng, 4);
  r.make_model = random_token(rng, 12);
  r.sockets = small(rng);
  r.cores_per_socket = small(rng);
  r.threads_per_core = small(rng) % 2 + 1;
  r.cache_mb = unit(rng) * 64.0;
  r.memory_gb = std::round(unit(rng) * 512.0);
  r.memory_speed_mhz = 2133.0 + small(rng) * 100.0;
  r.network_ports = count(rng);
  r.port_speed_gbps = unit(rng) * 100.0;
  r.disk_count = count(rng);
  r.disk_capacity_gb = unit(rng) * 4000.0;
  if (const int k = raid(rng); k >= 0) {
    const RaidLevel levels[] = {RaidLevel::None, RaidLevel::Raid0,
                                RaidLevel::Raid1, RaidLevel::Raid5,
                                RaidLevel::Raid6, RaidLevel::Raid10};
    r.raid_level = levels[k];
  }
  r.os_name = random_token(rng);
  r.patch_level = random_token(rng, 4);
  for (int i = small(rng) % 4; i > 0; --i) r.applications.push_back(random_token(rng));
  for (int i = small(rng) % 3; i > 0; --i) r.services.push_back(random_token(rng));
  r.utilization = unit(rng);
  if (small(rng) == 1) r.utilization = 0.0;
  if (small(rng) == 2) r.utilization = 1.0;
  r.status = small(rng) % 2 ? ServerStatus::Active : ServerStatus::Idle;
  r.peak_efficiency = 0.25 + unit(rng) * 4.0;
  return r;
}

inline Inventory random_inventory(std::mt19937_64& rng, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> size(0, max_size);
  Inventory inv;
  inv.source = "random";
  const std::size_t n = size(rng);
  for (std::size_t i = 0; i < n; ++i) inv.servers.push_back(random_server(rng, i));
  return inv;
}

}  // namespace greenpack::testing

#endif  // GREENPACK_TESTS_FIXTURES_HPP
