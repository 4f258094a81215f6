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

#ifndef GREENPACK_CONSOLIDATE_HPP
#define GREENPACK_CONSOLIDATE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "greenpack/classify.hpp"
#include "greenpack/power.hpp"
#include "greenpack/workload.hpp"

namespace greenpack {

/// Utilization at which fixed-ratio hosts are charged and reported.
inline constexpr double kFixedRatioPostUtilization = 0.50;

/// Relative slack on the host capacity test, so that loads such as
/// 3 x 0.1 fill a 0.3 target despite binary rounding.
inline constexpr double kCapacityTolerance = 1e-9;

struct UtilizationRange {
  double low = 0.0;
  double high = 0.0;

  friend bool operator==(const UtilizationRange&,
                         const UtilizationRange&) = default;
};

/// Planned post-consolidation processor utilization per pool. Packing uses
/// the Innovation figure and the upper bound of the other two ranges.
struct UtilizationTargets {
  double innovation = 0.50;
  UtilizationRange production{0.25, 0.50};
  UtilizationRange mission_critical{0.25, 0.30};

  /// Throws DomainError if a value is outside (0, 1] or a range is inverted.
  void check() const;
  double packing_target(Pool pool) const;

  friend bool operator==(const UtilizationTargets&,
                         const UtilizationTargets&) = default;
};

/// Guests per host, written r:1.
struct ConsolidationRatios {
  int innovation = 15;
  int production = 10;
  int mission_critical = 5;

  void check() const;
  int operator[](Pool pool) const;

  friend bool operator==(const ConsolidationRatios&,
                         const ConsolidationRatios&) = default;
};

/// Parses {ratios: {...}} / {targets: {...}} documents. Either the wrapped
/// object or the bare inner object is accepted. Keys that are absent keep
/// their defaults. Throws ParseError or DomainError.
ConsolidationRatios parse_ratios(std::string_view json_text);
UtilizationTargets parse_targets(std::string_view json_text);

/// Largest integer ratio r >= 1 with r * pool_mean_utilization <= target.
/// Throws DomainError unless 0 < pool_mean_utilization <= target <= 1.
int derive_ratio(double pool_mean_utilization, double target);

struct Host {
  std::string id;
  double capacity = 0.0;
  double load = 0.0;  // sum of guest loads, accumulated in placement order
  std::vector<std::string> guests;

  double utilization() const { return capacity > 0.0 ? load / capacity : 0.0; }

  friend bool operator==(const Host&, const Host&) = default;
};

using Placement = std::vector<Host>;

/// First-fit decreasing onto identical hosts named host-1, host-2, ...
///
/// Guests are sorted by load descending, ties by server id ascending. Each
/// goes to the first open host whose load stays within
/// target * host_capacity, opening a new host when none fits. Throws
/// InfeasibleGuestError for a guest larger than target * host_capacity and
/// DomainError for target outside (0, 1] or non-positive capacity.
Placement pack_first_fit_decreasing(std::span<const NormalizedWorkload> workloads,
                                    double host_capacity, double target);

/// First-fit decreasing where the hosts are the guests' own machines.
/// New hosts are opened from the unused servers, largest capacity first
/// (ties by id). Throws InfeasibleGuestError when a guest fits neither an
/// open host nor the largest unused server.
Placement pack_onto_own_servers(std::span<const NormalizedWorkload> workloads,
                                double target);

enum class PlanMode { FixedRatio, Packed };

std::string_view to_string(PlanMode mode);

struct PoolPlan {
  Pool pool = Pool::Innovation;
  std::size_t server_count = 0;
  // Configured r in fixed-ratio mode; servers per host achieved when packed.
  double ratio = 1.0;
  std::size_t host_count = 0;
  Placement hosts;  // packed mode only
  // Fixed-ratio: the 50% the plan charges for. Packed: the pool target.
  double post_utilization_stated = 0.0;
  // Actual mean host utilization implied by the plan.
  double post_utilization_computed = 0.0;
  double post_per_server_watts = 0.0;
  double post_total_watts = 0.0;
};

/// Hosts = ceil(pool_count / ratio); watts = hosts * post_per_server_watts.
/// Throws DomainError for ratio < 1 or negative watts.
PoolPlan fixed_ratio_consolidate(std::size_t pool_count, int ratio,
                                 double post_per_server_watts);

struct ConsolidationPlan {
  PlanMode mode = PlanMode::FixedRatio;
  std::array<PoolPlan, 3> pools{};

  const PoolPlan& operator[](Pool pool) const { return pools[index_of(pool)]; }
  std::size_t total_hosts() const;
  double total_watts() const;
};

/// Builds a plan for every pool, in order Innovation, Production,
/// MissionCritical.
///
/// Fixed-ratio hosts are charged power_at(curve, 0.50) each; packed hosts
/// are charged at their own achieved utilization. Throws DomainError when
/// the assignment and workloads name different servers, and propagates
/// InfeasibleGuestError from packing.
ConsolidationPlan plan(const PoolAssignment& assignment,
                       std::span<const NormalizedWorkload> workloads,
                       const ConsolidationRatios& ratios,
                       const UtilizationTargets& targets,
                       const PowerCurve& curve, PlanMode mode);

}  // namespace greenpack

#endif  // GREENPACK_CONSOLIDATE_HPP
