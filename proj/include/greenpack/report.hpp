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

#ifndef GREENPACK_REPORT_HPP
#define GREENPACK_REPORT_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greenpack/classify.hpp"
#include "greenpack/consolidate.hpp"
#include "greenpack/inventory.hpp"
#include "greenpack/power.hpp"

namespace greenpack {

/// How pre-consolidation power is charged.
///
/// `Paper` charges every server the curve's base (lowest-anchor) figure,
/// whatever its utilization, which is how the published pre/post tables are
/// accounted. `Curve` evaluates the curve at each server's own utilization.
enum class EnergyModel { Paper, Curve };

std::string_view to_string(EnergyModel model);
std::optional<EnergyModel> energy_model_from_string(std::string_view text);

struct ReportRow {
  std::string name;
  std::size_t pre_count = 0;
  double pre_utilization = 0.0;
  double pre_watts = 0.0;
  double ratio = 0.0;
  std::size_t post_host_count = 0;
  double post_utilization_stated = 0.0;
  double post_utilization_computed = 0.0;
  double post_watts = 0.0;
  double saving_watts = 0.0;
  double saving_percent = 0.0;  // 0..100, zero when pre_watts is zero

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct EnergyReport {
  PlanMode mode = PlanMode::FixedRatio;
  EnergyModel energy_model = EnergyModel::Paper;
  std::string power_curve;
  double hours_per_year = kHoursPerYear;
  double emission_factor = kDefaultEmissionFactor.kg_co2_per_kwh;
  std::array<ReportRow, 3> pools{};
  ReportRow total;
  double annual_kwh_saved = 0.0;
  double co2_kg_saved = 0.0;
  std::vector<std::string> dead_server_ids;

  friend bool operator==(const EnergyReport&, const EnergyReport&) = default;
};

struct ReportOptions {
  EnergyModel energy_model = EnergyModel::Paper;
  EmissionFactor emission_factor = kDefaultEmissionFactor;
  double hours_per_year = kHoursPerYear;
  double dead_threshold = kDefaultDeadThreshold;
};

/// Totals are sums of the pool rows. The total row's utilizations are
/// weighted: pre by server count, post by host count. A negative saving
/// (plan draws more than before) carries through to kWh and CO2 with its
/// sign.
EnergyReport build_report(const Inventory& inventory,
                          const PoolAssignment& assignment,
                          const ConsolidationPlan& plan,
                          const PowerCurve& curve,
                          const ReportOptions& options = {});

enum class OutputFormat { Text, Csv, Json };

std::optional<OutputFormat> output_format_from_string(std::string_view text);

std::string render(const EnergyReport& report, OutputFormat format);

/// Inverse of render for the csv and json encodings. Throws ParseError, or
/// UsageError when asked to parse text.
EnergyReport parse_report(std::string_view text, OutputFormat format);

std::string render_assignment(const Inventory& inventory,
                              const PoolAssignment& assignment,
                              OutputFormat format);

std::string render_plan(const ConsolidationPlan& plan, OutputFormat format);

}  // namespace greenpack

#endif  // GREENPACK_REPORT_HPP
