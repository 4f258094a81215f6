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

#include "greenpack/consolidate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "greenpack/errors.hpp"
#include "json.hpp"

namespace greenpack {

namespace {

bool in_unit_interval(double v) { return v > 0.0 && v <= 1.0; }

bool fits(double load, double limit) {
  return load <= limit * (1.0 + kCapacityTolerance);
}

nlohmann::json parse_config(std::string_view json_text, const char* wrapper) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(1, "expected a JSON object");
  if (auto it = doc.find(wrapper); it != doc.end()) {
    if (!it->is_object()) {
      throw ParseError(1, std::string("'") + wrapper + "' must be an object");
    }
    return *it;
  }
  return doc;
}

int read_ratio(const nlohmann::json& obj, const char* key, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) {
    throw ParseError(1, std::string("ratio '") + key + "' must be an integer");
  }
  return it->get<int>();
}

UtilizationRange read_range(const nlohmann::json& obj, const char* key,
                            UtilizationRange fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (it->is_number()) {
    const double v = it->get<double>();
    return {v, v};
  }
  if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() ||
      !(*it)[1].is_number()) {
    throw ParseError(1, std::string("target '") + key +
                            "' must be [low, high] or a number");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

struct ByLoadDescending {
  bool operator()(const NormalizedWorkload* a,
                  const NormalizedWorkload* b) const {
    if (a->load != b->load) return a->load > b->load;
    return a->server_id < b->server_id;
  }
};

std::vector<const NormalizedWorkload*> sorted_guests(
    std::span<const NormalizedWorkload> workloads) {
  std::vector<const NormalizedWorkload*> guests;
  guests.reserve(workloads.size());
  for (const auto& w : workloads) guests.push_back(&w);
  std::sort(guests.begin(), guests.end(), ByLoadDescending{});
  return guests;
}

void check_target(double target) {
  if (!in_unit_interval(target)) {
    throw DomainError("utilization target must lie in (0, 1]");
  }
}

// Index of the first host that still admits `load`, or hosts.size().
std::size_t first_fit(const Placement& hosts, double load, double target) {
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    if (fits(hosts[i].load + load, target * hosts[i].capacity)) return i;
  }
  return hosts.size();
}

void place(Host& host, const NormalizedWorkload& guest) {
  host.load += guest.load;
  host.guests.push_back(guest.server_id);
}

}  // namespace

void UtilizationTargets::check() const {
  auto check_range = [](const UtilizationRange& r, const char* name) {
    if (!in_unit_interval(r.low) || !in_unit_interval(r.high) ||
        r.low > r.high) {
      throw DomainError(std::string(name) +
                        " target range must satisfy 0 < low <= high <= 1");
    }
  };
  if (!in_unit_interval(innovation)) {
    throw DomainError("innovation target must lie in (0, 1]");
  }
  check_range(production, "production");
  check_range(mission_critical, "mission_critical");
}

double UtilizationTargets::packing_target(Pool pool) const {
  switch (pool) {
    case Pool::Innovation: return innovation;
    case Pool::Production: return production.high;
    case Pool::MissionCritical: return mission_critical.high;
  }
  return innovation;
}

void ConsolidationRatios::check() const {
  if (innovation < 1 || production < 1 || mission_critical < 1) {
    throw DomainError("consolidation ratios must be >= 1");
  }
}

int ConsolidationRatios::operator[](Pool pool) const {
  switch (pool) {
    case Pool::Innovation: return innovation;
    case Pool::Production: return production;
    case Pool::MissionCritical: return mission_critical;
  }
  return innovation;
}

ConsolidationRatios parse_ratios(std::string_view json_text) {
  const auto obj = parse_config(json_text, "ratios");
  ConsolidationRatios ratios;
  ratios.innovation = read_ratio(obj, "innovation", ratios.innovation);
  ratios.production = read_ratio(obj, "production", ratios.production);
  ratios.mission_critical =
      read_ratio(obj, "mission_critical", ratios.mission_critical);
  ratios.check();
  return ratios;
}

UtilizationTargets parse_targets(std::string_view json_text) {
  const auto obj = parse_config(json_text, "targets");
  UtilizationTargets targets;
  if (auto it = obj.find("innovation"); it != obj.end()) {
    if (!it->is_number()) throw ParseError(1, "innovation target must be a number");
    targets.innovation = it->get<double>();
  }
  targets.production = read_range(obj, "production", targets.production);
  targets.mission_critical =
      read_range(obj, "mission_critical", targets.mission_critical);
  targets.check();
  return targets;
}

int derive_ratio(double pool_mean_utilization, double target) {
  if (!(pool_mean_utilization > 0.0) || !(pool_mean_utilization <= target) ||
      !(target <= 1.0)) {
    throw DomainError(
        "derive_ratio needs 0 < pool mean utilization <= target <= 1");
  }
  auto ratio = static_cast<long long>(std::floor(target / pool_mean_utilization));
  // The quotient can land one off after rounding; settle on the product.
  while (static_cast<double>(ratio + 1) * pool_mean_utilization <= target) {
    ++ratio;
  }
  while (ratio > 1 &&
         static_cast<double>(ratio) * pool_mean_utilization > target) {
    --ratio;
  }
  return static_cast<int>(std::max(1LL, ratio));
}

Placement pack_first_fit_decreasing(std::span<const NormalizedWorkload> workloads,
                                    double host_capacity, double target) {
  check_target(target);
  if (!(host_capacity > 0.0)) throw DomainError("host capacity must be positive");
  const auto guests = sorted_guests(workloads);
  const double limit = target * host_capacity;
  for (const auto* g : guests) {
    if (!fits(g->load, limit)) throw InfeasibleGuestError(g->server_id);
  }
  Placement hosts;
  for (const auto* g : guests) {
    std::size_t i = first_fit(hosts, g->load, target);
    if (i == hosts.size()) {
      hosts.push_back({"host-" + std::to_string(hosts.size() + 1),
                       host_capacity, 0.0, {}});
    }
    place(hosts[i], *g);
  }
  return hosts;
}

Placement pack_onto_own_servers(std::span<const NormalizedWorkload> workloads,
                                double target) {
  check_target(target);
  std::vector<const NormalizedWorkload*> machines;
  machines.reserve(workloads.size());
  for (const auto& w : workloads) {
    if (!(w.capacity > 0.0)) {
      throw DomainError("server '" + w.server_id + "' has no capacity");
    }
    machines.push_back(&w);
  }
  std::sort(machines.begin(), machines.end(),
            [](const NormalizedWorkload* a, const NormalizedWorkload* b) {
              if (a->capacity != b->capacity) return a->capacity > b->capacity;
              return a->server_id < b->server_id;
            });

  Placement hosts;
  std::size_t next_machine = 0;
  for (const auto* g : sorted_guests(workloads)) {
    std::size_t i = first_fit(hosts, g->load, target);
    if (i == hosts.size()) {
      // Each guest opens at most one host, so a machine is always left.
      const auto* m = machines[next_machine++];
      if (!fits(g->load, target * m->capacity)) {
        throw InfeasibleGuestError(g->server_id);
      }
      hosts.push_back({m->server_id, m->capacity, 0.0, {}});
    }
    place(hosts[i], *g);
  }
  return hosts;
}

std::string_view to_string(PlanMode mode) {
  return mode == PlanMode::FixedRatio ? "fixed" : "packed";
}

PoolPlan fixed_ratio_consolidate(std::size_t pool_count, int ratio,
                                 double post_per_server_watts) {
  if (ratio < 1) throw DomainError("consolidation ratio must be >= 1");
  if (!(post_per_server_watts >= 0.0)) {
    throw DomainError("post-consolidation watts must be non-negative");
  }
  PoolPlan p;
  p.server_count = pool_count;
  p.ratio = static_cast<double>(ratio);
  const auto r = static_cast<std::size_t>(ratio);
  p.host_count = (pool_count + r - 1) / r;
  p.post_utilization_stated = kFixedRatioPostUtilization;
  p.post_per_server_watts = post_per_server_watts;
  p.post_total_watts =
      static_cast<double>(p.host_count) * post_per_server_watts;
  return p;
}

std::size_t ConsolidationPlan::total_hosts() const {
  std::size_t n = 0;
  for (const auto& p : pools) n += p.host_count;
  return n;
}

double ConsolidationPlan::total_watts() const {
  double w = 0.0;
  for (const auto& p : pools) w += p.post_total_watts;
  return w;
}

ConsolidationPlan plan(const PoolAssignment& assignment,
                       std::span<const NormalizedWorkload> workloads,
                       const ConsolidationRatios& ratios,
                       const UtilizationTargets& targets,
                       const PowerCurve& curve, PlanMode mode) {
  ratios.check();
  targets.check();

  std::map<std::string_view, Pool> pool_by_id;
  for (const auto& [id, pool] : assignment.members) pool_by_id.emplace(id, pool);
  if (pool_by_id.size() != workloads.size()) {
    throw DomainError("assignment and workloads cover different servers");
  }
  std::array<std::vector<NormalizedWorkload>, 3> by_pool;
  for (const auto& w : workloads) {
    auto it = pool_by_id.find(w.server_id);
    if (it == pool_by_id.end()) {
      throw DomainError("workload '" + w.server_id + "' has no pool assignment");
    }
    by_pool[index_of(it->second)].push_back(w);
  }

  ConsolidationPlan out;
  out.mode = mode;
  for (Pool pool : kPools) {
    const auto& members = by_pool[index_of(pool)];
    const double utilization_sum = std::accumulate(
        members.begin(), members.end(), 0.0,
        [](double s, const NormalizedWorkload& w) {
          return s + (w.capacity > 0.0 ? w.load / w.capacity : 0.0);
        });
    PoolPlan p;
    if (mode == PlanMode::FixedRatio) {
      p = fixed_ratio_consolidate(members.size(), ratios[pool],
                                  power_at(curve, kFixedRatioPostUtilization));
      // Hosts are interchangeable here, so achieved utilization is the
      // pool's summed utilization spread over the hosts.
      p.post_utilization_computed =
          p.host_count ? utilization_sum / static_cast<double>(p.host_count)
                       : 0.0;
    } else {
      const double target = targets.packing_target(pool);
      p.server_count = members.size();
      p.hosts = pack_onto_own_servers(members, target);
      p.host_count = p.hosts.size();
      p.post_utilization_stated = target;
      double load = 0.0;
      double capacity = 0.0;
      for (const auto& h : p.hosts) {
        load += h.load;
        capacity += h.capacity;
        p.post_total_watts += power_at(curve, std::min(1.0, h.utilization()));
      }
      p.post_utilization_computed = capacity > 0.0 ? load / capacity : 0.0;
      p.ratio = p.host_count ? static_cast<double>(p.server_count) /
                                   static_cast<double>(p.host_count)
                             : 1.0;
      p.post_per_server_watts =
          p.host_count ? p.post_total_watts / static_cast<double>(p.host_count)
                       : 0.0;
    }
    p.pool = pool;
    out.pools[index_of(pool)] = std::move(p);
  }
  return out;
}

}  // namespace greenpack
