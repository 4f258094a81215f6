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

#ifndef GREENPACK_POWER_HPP
#define GREENPACK_POWER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greenpack/inventory.hpp"

namespace greenpack {

struct PowerAnchor {
  double utilization = 0.0;
  double watts = 0.0;

  friend bool operator==(const PowerAnchor&, const PowerAnchor&) = default;
};

/// Piecewise-linear utilization -> watts model.
///
/// Anchors are strictly increasing in utilization and non-decreasing in
/// watts. Utilizations outside the anchor range clamp to the nearest end
/// anchor's watts.
class PowerCurve {
 public:
  /// Throws DomainError if the anchor list is empty or breaks ordering.
  PowerCurve(std::string name, std::vector<PowerAnchor> anchors);

  const std::string& name() const noexcept { return name_; }
  std::span<const PowerAnchor> anchors() const noexcept { return anchors_; }

  /// Draw at the lowest anchor. Under paper accounting every
  /// pre-consolidation server is charged this figure.
  double base_watts() const noexcept { return anchors_.front().watts; }

  friend bool operator==(const PowerCurve&, const PowerCurve&) = default;

 private:
  std::string name_;
  std::vector<PowerAnchor> anchors_;
};

/// (5%, 173 W), (50%, 230 W), (100%, 275 W).
PowerCurve paper_power_curve();

/// {name, anchors: [{utilization, watts}, ...]}. Throws ParseError, or
/// DomainError for anchors that break the curve invariants.
PowerCurve parse_power_curve(std::string_view json_text);

/// Throws DomainError unless 0 <= utilization <= 1.
double power_at(const PowerCurve& curve, double utilization);

struct EnergyFigure {
  double watts = 0.0;
  std::size_t servers = 0;
  double per_server_watts = 0.0;
};

EnergyFigure pool_energy(std::size_t servers, double per_server_watts);

/// Normalized workload at `utilization` divided by the curve's draw there.
double performance_to_power(const ServerRecord& record, double utilization,
                            const PowerCurve& curve);

inline constexpr double kHoursPerYear = 8760.0;

/// kWh drawn by a constant `watts` load over `hours`.
double annual_energy(double watts, double hours = kHoursPerYear);

/// Grid carbon intensity. The shipped default is a configuration value, not
/// a measured figure.
struct EmissionFactor {
  double kg_co2_per_kwh = 0.5;
};

inline constexpr EmissionFactor kDefaultEmissionFactor{0.5};

double co2_mass(double kwh, EmissionFactor factor);

}  // namespace greenpack

#endif  // GREENPACK_POWER_HPP
