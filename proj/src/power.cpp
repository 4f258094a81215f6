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

#include "greenpack/power.hpp"

#include <algorithm>
#include <cmath>

#include "greenpack/errors.hpp"
#include "greenpack/workload.hpp"
#include "json.hpp"

namespace greenpack {

PowerCurve::PowerCurve(std::string name, std::vector<PowerAnchor> anchors)
    : name_(std::move(name)), anchors_(std::move(anchors)) {
  if (anchors_.empty()) throw DomainError("power curve needs an anchor");
  for (std::size_t i = 0; i < anchors_.size(); ++i) {
    const auto& a = anchors_[i];
    if (!(a.utilization >= 0.0 && a.utilization <= 1.0)) {
      throw DomainError("power curve anchor utilization must lie in [0, 1]");
    }
    if (!(a.watts > 0.0) || !std::isfinite(a.watts)) {
      throw DomainError("power curve anchor watts must be positive");
    }
    if (i == 0) continue;
    const auto& prev = anchors_[i - 1];
    if (!(a.utilization > prev.utilization)) {
      throw DomainError(
          "power curve anchors must be strictly increasing in utilization");
    }
    if (a.watts < prev.watts) {
      throw DomainError("power curve watts must be non-decreasing");
    }
  }
}

PowerCurve paper_power_curve() {
  return PowerCurve("paper", {{0.05, 173.0}, {0.50, 230.0}, {1.00, 275.0}});
}

PowerCurve parse_power_curve(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("malformed power curve JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("anchors") ||
      !doc["anchors"].is_array()) {
    throw ParseError(1, "power curve needs an 'anchors' array");
  }
  std::vector<PowerAnchor> anchors;
  for (std::size_t i = 0; i < doc["anchors"].size(); ++i) {
    const auto& a = doc["anchors"][i];
    if (!a.is_object() || !a.contains("utilization") ||
        !a["utilization"].is_number() || !a.contains("watts") ||
        !a["watts"].is_number()) {
      throw ParseError(i + 1, "anchor needs numeric utilization and watts",
                       "anchor");
    }
    anchors.push_back({a["utilization"].get<double>(), a["watts"].get<double>()});
  }
  std::string name = doc.value("name", std::string("custom"));
  return PowerCurve(std::move(name), std::move(anchors));
}

double power_at(const PowerCurve& curve, double utilization) {
  if (!(utilization >= 0.0 && utilization <= 1.0)) {
    throw DomainError("utilization must lie in [0, 1]");
  }
  const auto anchors = curve.anchors();
  if (utilization <= anchors.front().utilization) return anchors.front().watts;
  if (utilization >= anchors.back().utilization) return anchors.back().watts;
  // First anchor strictly above the query; its predecessor is at or below.
  const auto hi = std::upper_bound(
      anchors.begin(), anchors.end(), utilization,
      [](double u, const PowerAnchor& a) { return u < a.utilization; });
  const auto lo = hi - 1;
  if (lo->utilization == utilization) return lo->watts;
  const double t =
      (utilization - lo->utilization) / (hi->utilization - lo->utilization);
  return std::clamp(lo->watts + (hi->watts - lo->watts) * t, lo->watts,
                    hi->watts);
}

EnergyFigure pool_energy(std::size_t servers, double per_server_watts) {
  if (!(per_server_watts >= 0.0)) {
    throw DomainError("per-server watts must be non-negative");
  }
  return {static_cast<double>(servers) * per_server_watts, servers,
          per_server_watts};
}

double performance_to_power(const ServerRecord& record, double utilization,
                            const PowerCurve& curve) {
  const double watts = power_at(curve, utilization);
  if (!(watts > 0.0)) throw DomainError("power draw is zero");
  return utilization * processor_capacity(record) / watts;
}

double annual_energy(double watts, double hours) {
  if (!(watts >= 0.0) || !(hours >= 0.0)) {
    throw DomainError("watts and hours must be non-negative");
  }
  return watts / 1000.0 * hours;
}

double co2_mass(double kwh, EmissionFactor factor) {
  if (!(kwh >= 0.0) || !(factor.kg_co2_per_kwh >= 0.0)) {
    throw DomainError("energy and emission factor must be non-negative");
  }
  return kwh * factor.kg_co2_per_kwh;
}

}  // namespace greenpack
