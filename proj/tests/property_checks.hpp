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

// Randomized invariant checks shared by the property tests and the
// acceptance binary. Each check runs `cases` generated inputs and returns
// the number of inputs that broke the invariant, plus a first-failure note.

#ifndef GREENPACK_TESTS_PROPERTY_CHECKS_HPP
#define GREENPACK_TESTS_PROPERTY_CHECKS_HPP

#include <cmath>
#include <cstddef>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "greenpack/errors.hpp"
#include "greenpack/number_format.hpp"
#include "greenpack/report.hpp"

namespace greenpack::testing {

struct CheckResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0; }
};

/// validate() flags utilization exactly when it leaves [0, 1], and
/// parse_inventory rejects exactly those records.
inline CheckResult check_utilization_validation(std::size_t cases,
                                                std::uint64_t seed) {
  CheckResult out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wide(-0.5, 1.5);
  std::uniform_int_distribution<int> edge(0, 9);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    auto r = random_server(rng, i);
    switch (edge(rng)) {
      case 0: r.utilization = 0.0; break;
      case 1: r.utilization = 1.0; break;
      case 2: r.utilization = std::nextafter(1.0, 2.0); break;
      case 3: r.utilization = -0.0; break;
      case 4: r.utilization = std::nextafter(0.0, -1.0); break;
      default: r.utilization = wide(rng);
    }
    const bool in_range = r.utilization >= 0.0 && r.utilization <= 1.0;
    Inventory inv{{r}, {}};
    const auto v = validate(inv);
    const bool flagged =
        !v.empty() && v.size() == 1 && v[0].field == "utilization";
    if (in_range != v.empty() || (!in_range && !flagged)) {
      out.fail("validate disagrees at utilization " + format_number(r.utilization));
      continue;
    }
    for (auto fmt : {InventoryFormat::Csv, InventoryFormat::Json}) {
      const auto text = serialize_inventory(inv, fmt);
      bool rejected = false;
      try {
        (void)parse_inventory(text, fmt);
      } catch (const ValidationError& e) {
        rejected = e.field() == "utilization";
      }
      if (rejected == in_range) {
        out.fail("parse_inventory disagrees at utilization " +
                 format_number(r.utilization));
      }
    }
  }
  return out;
}

/// ceil semantics: hosts * r >= n > (hosts - 1) * r, hosts <= n.
inline CheckResult check_ceil_host_bounds(std::size_t cases, std::uint64_t seed) {
  CheckResult out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> count(0, 5000);
  std::uniform_int_distribution<int> ratio(1, 64);
  std::uniform_real_distribution<double> watts(0.0, 500.0);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    const std::size_t n = i % 10 == 0 ? i % 3 : count(rng);
    const int r = ratio(rng);
    const double w = watts(rng);
    const auto p = fixed_ratio_consolidate(n, r, w);
    const auto ru = static_cast<std::size_t>(r);
    const bool ok =
        p.host_count <= n &&
        (n == 0 ? p.host_count == 0
                : p.host_count * ru >= n && n > (p.host_count - 1) * ru) &&
        p.post_total_watts == static_cast<double>(p.host_count) * w;
    if (!ok) {
      out.fail("n=" + std::to_string(n) + " r=" + std::to_string(r) +
               " hosts=" + std::to_string(p.host_count));
    }
  }
  return out;
}

struct RandomReport {
  Inventory inventory;
  EnergyReport report;
};

/// Random inventory pushed through the whole pipeline with randomized mode,
/// ratios, energy model and options. Packed draws that turn out infeasible
/// are redrawn.
inline RandomReport random_report(std::mt19937_64& rng, std::size_t index) {
  std::uniform_int_distribution<int> ratio(1, 20);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto curve = paper_power_curve();
  while (true) {
    RandomReport out;
    out.inventory = random_inventory(rng, 40);
    const PlanMode mode = coin(rng) ? PlanMode::Packed : PlanMode::FixedRatio;
    if (mode == PlanMode::Packed) {
      for (auto& s : out.inventory.servers) s.utilization *= 0.3;
    }
    std::size_t k = 0;
    for (auto& s : out.inventory.servers) {
      s.id = "r" + std::to_string(index) + "-" + std::to_string(k++) + s.id;
      const char* tags[] = {"qa", "sla", "realtime", "misc"};
      s.services.push_back(tags[k % 4]);
    }
    const auto assignment = partition(out.inventory, default_rules());
    std::vector<NormalizedWorkload> workloads;
    for (const auto& s : out.inventory.servers) {
      workloads.push_back(normalized_workload(s));
    }
    const ConsolidationRatios ratios{ratio(rng), ratio(rng), ratio(rng)};
    ReportOptions options;
    options.energy_model = coin(rng) ? EnergyModel::Curve : EnergyModel::Paper;
    options.emission_factor = EmissionFactor{unit(rng)};
    options.hours_per_year = std::round(unit(rng) * 8760.0);
    options.dead_threshold = unit(rng) * 0.05;
    try {
      const auto p = plan(assignment, workloads, ratios, {}, curve, mode);
      out.report = build_report(out.inventory, assignment, p, curve, options);
      return out;
    } catch (const InfeasibleGuestError&) {
      continue;
    }
  }
}

/// Totals are exact sums of the pool rows; each row's saving is pre - post;
/// percent follows from watts.
inline CheckResult check_report_sums(std::size_t cases, std::uint64_t seed) {
  CheckResult out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    const auto r = random_report(rng, i).report;
    std::size_t pre_count = 0, hosts = 0;
    double pre = 0.0, post = 0.0, saving = 0.0;
    bool rows_ok = true;
    for (const auto& p : r.pools) {
      pre_count += p.pre_count;
      hosts += p.post_host_count;
      pre += p.pre_watts;
      post += p.post_watts;
      saving += p.saving_watts;
      rows_ok = rows_ok && p.saving_watts == p.pre_watts - p.post_watts &&
                p.post_host_count <= p.pre_count &&
                (p.pre_watts > 0.0
                     ? std::abs(p.saving_percent -
                                p.saving_watts / p.pre_watts * 100.0) <= 1e-9
                     : p.saving_percent == 0.0);
    }
    const auto& t = r.total;
    const bool totals_ok =
        t.pre_count == pre_count && t.post_host_count == hosts &&
        t.pre_watts == pre && t.post_watts == post && t.saving_watts == saving &&
        std::abs(t.saving_watts - (t.pre_watts - t.post_watts)) <=
            1e-9 * std::max(1.0, t.pre_watts);
    const bool energy_ok =
        std::abs(r.annual_kwh_saved - t.saving_watts / 1000.0 * r.hours_per_year) <=
        1e-9 * std::max(1.0, std::abs(r.annual_kwh_saved));
    if (!rows_ok || !totals_ok || !energy_ok) {
      out.fail("report case " + std::to_string(i) + " breaks a sum invariant");
    }
  }
  return out;
}

/// parse(serialize(x)) == x and serialize is a fixed point, both formats.
inline CheckResult check_inventory_round_trip(std::size_t cases,
                                              std::uint64_t seed) {
  CheckResult out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    auto inv = random_inventory(rng, 12);
    for (std::size_t k = 0; k < inv.servers.size(); ++k) {
      inv.servers[k].id += "#" + std::to_string(k);
    }
    for (auto fmt : {InventoryFormat::Csv, InventoryFormat::Json}) {
      const auto text = serialize_inventory(inv, fmt);
      try {
        const auto back = parse_inventory(text, fmt, inv.source);
        if (!(back == inv) || serialize_inventory(back, fmt) != text) {
          out.fail(std::string(fmt == InventoryFormat::Csv ? "csv" : "json") +
                   " round trip changed case " + std::to_string(i));
        }
      } catch (const Error& e) {
        out.fail(std::string("round trip threw: ") + e.what());
      }
    }
  }
  return out;
}

inline CheckResult check_report_round_trip(std::size_t cases, std::uint64_t seed) {
  CheckResult out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i, ++out.cases) {
    const auto r = random_report(rng, i).report;
    for (auto fmt : {OutputFormat::Json, OutputFormat::Csv}) {
      const auto doc = render(r, fmt);
      try {
        const auto back = parse_report(doc, fmt);
        if (!(back == r) || render(back, fmt) != doc) {
          out.fail("report round trip changed case " + std::to_string(i));
        }
      } catch (const Error& e) {
        out.fail(std::string("report round trip threw: ") + e.what());
      }
    }
  }
  return out;
}

}  // namespace greenpack::testing

#endif  // GREENPACK_TESTS_PROPERTY_CHECKS_HPP
