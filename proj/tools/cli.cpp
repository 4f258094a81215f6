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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "greenpack/classify.hpp"
#include "greenpack/consolidate.hpp"
#include "greenpack/errors.hpp"
#include "greenpack/inventory.hpp"
#include "greenpack/number_format.hpp"
#include "greenpack/power.hpp"
#include "greenpack/report.hpp"
#include "json.hpp"

namespace greenpack::cli {

namespace {

struct Options {
  std::string inventory;
  std::string format;
  std::string rules;
  std::string ratios;
  std::string targets;
  std::string power_curve;
  std::string mode = "fixed";
  std::string energy_model = "paper";
  double emission_factor = kDefaultEmissionFactor.kg_co2_per_kwh;
  double hours = kHoursPerYear;
  double dead_threshold = kDefaultDeadThreshold;
  std::string out = "text";
  double utilization = 0.0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InventoryFormat inventory_format(const Options& o) {
  if (o.format == "json") return InventoryFormat::Json;
  if (o.format == "csv") return InventoryFormat::Csv;
  return std::filesystem::path(o.inventory).extension() == ".json"
             ? InventoryFormat::Json
             : InventoryFormat::Csv;
}

void require_inventory(const Options& o) {
  if (o.inventory.empty()) throw UsageError("--inventory is required");
}

Inventory load_inventory(const Options& o) {
  require_inventory(o);
  return parse_inventory(read_file(o.inventory), inventory_format(o),
                         o.inventory);
}

PowerCurve load_curve(const Options& o) {
  return o.power_curve.empty() ? paper_power_curve()
                               : parse_power_curve(read_file(o.power_curve));
}

ClassificationRules load_rules(const Options& o) {
  return o.rules.empty() ? default_rules() : parse_rules(read_file(o.rules));
}

OutputFormat out_format(const Options& o) {
  return *output_format_from_string(o.out);
}

PlanMode plan_mode(const Options& o) {
  return o.mode == "packed" ? PlanMode::Packed : PlanMode::FixedRatio;
}

ConsolidationPlan build_plan(const Options& o, const Inventory& inv,
                             const PoolAssignment& assignment,
                             const PowerCurve& curve) {
  const auto ratios =
      o.ratios.empty() ? ConsolidationRatios{} : parse_ratios(read_file(o.ratios));
  const auto targets =
      o.targets.empty() ? UtilizationTargets{} : parse_targets(read_file(o.targets));
  std::vector<NormalizedWorkload> workloads;
  workloads.reserve(inv.servers.size());
  for (const auto& s : inv.servers) workloads.push_back(normalized_workload(s));
  return plan(assignment, workloads, ratios, targets, curve, plan_mode(o));
}

int cmd_validate(const Options& o, std::ostream& out) {
  require_inventory(o);
  const auto inv =
      read_inventory(read_file(o.inventory), inventory_format(o), o.inventory);
  const auto violations = validate(inv);
  const auto fmt = out_format(o);
  if (fmt == OutputFormat::Json) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
      doc.push_back({{"record_id", v.record_id}, {"field", v.field}, {"rule", v.rule}});
    }
    out << doc.dump(2) << "\n";
  } else if (fmt == OutputFormat::Csv) {
    out << "record_id,field,rule\n";
    for (const auto& v : violations) {
      out << v.record_id << "," << v.field << "," << v.rule << "\n";
    }
  } else if (violations.empty()) {
    out << "ok: " << inv.servers.size() << " servers\n";
  } else {
    for (const auto& v : violations) {
      out << v.record_id << ": " << v.field << " violates " << v.rule << "\n";
    }
  }
  return violations.empty() ? kExitOk : kExitFailure;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto inv = load_inventory(o);
  const auto assignment = partition(inv, load_rules(o));
  out << render_assignment(inv, assignment, out_format(o));
  return kExitOk;
}

int cmd_plan(const Options& o, std::ostream& out) {
  const auto inv = load_inventory(o);
  const auto curve = load_curve(o);
  const auto assignment = partition(inv, load_rules(o));
  out << render_plan(build_plan(o, inv, assignment, curve), out_format(o));
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  const auto inv = load_inventory(o);
  const auto curve = load_curve(o);
  const auto assignment = partition(inv, load_rules(o));
  const auto p = build_plan(o, inv, assignment, curve);
  ReportOptions ro;
  ro.energy_model = *energy_model_from_string(o.energy_model);
  ro.emission_factor = EmissionFactor{o.emission_factor};
  ro.hours_per_year = o.hours;
  ro.dead_threshold = o.dead_threshold;
  out << render(build_report(inv, assignment, p, curve, ro), out_format(o));
  return kExitOk;
}

int cmd_power(const Options& o, std::ostream& out) {
  const auto curve = load_curve(o);
  const double watts = power_at(curve, o.utilization);
  if (out_format(o) == OutputFormat::Json) {
    nlohmann::ordered_json doc{{"power_curve", curve.name()},
                               {"utilization", o.utilization},
                               {"watts", watts}};
    out << doc.dump(2) << "\n";
  } else {
    out << format_number(watts) << "\n";
  }
  return kExitOk;
}

int cmd_dead(const Options& o, std::ostream& out) {
  const auto ids = identify_dead(load_inventory(o), o.dead_threshold);
  const auto fmt = out_format(o);
  if (fmt == OutputFormat::Json) {
    out << nlohmann::json(ids).dump(2) << "\n";
    return kExitOk;
  }
  if (fmt == OutputFormat::Csv) out << "id\n";
  for (const auto& id : ids) out << id << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Server consolidation planner: pools, packing and energy savings",
               "greenpack"};
  app.require_subcommand(1, 1);

  auto add_common = [&](CLI::App* sub, bool needs_inventory) {
    auto* inv = sub->add_option("--inventory", o.inventory, "Inventory file (CSV or JSON)");
    if (needs_inventory) inv->required();
    sub->add_option("--format", o.format, "Inventory format (default: by extension)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
  };
  auto add_planning = [&](CLI::App* sub) {
    sub->add_option("--rules", o.rules, "Classification rules (JSON)");
    sub->add_option("--ratios", o.ratios, "Consolidation ratios (JSON)");
    sub->add_option("--targets", o.targets, "Utilization targets (JSON)");
    sub->add_option("--power-curve", o.power_curve, "Power curve (JSON)");
    sub->add_option("--mode", o.mode, "Planning mode")
        ->check(CLI::IsMember({"fixed", "packed"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check an inventory");
  add_common(validate_cmd, true);

  auto* classify_cmd = app.add_subcommand("classify", "Assign servers to pools");
  add_common(classify_cmd, true);
  classify_cmd->add_option("--rules", o.rules, "Classification rules (JSON)");

  auto* plan_cmd = app.add_subcommand("plan", "Build a consolidation plan");
  add_common(plan_cmd, true);
  add_planning(plan_cmd);

  auto* report_cmd = app.add_subcommand("report", "Pre/post energy report");
  add_common(report_cmd, true);
  add_planning(report_cmd);
  report_cmd->add_option("--energy-model", o.energy_model, "Pre-consolidation power model")
      ->check(CLI::IsMember({"paper", "curve"}));
  report_cmd->add_option("--emission-factor", o.emission_factor, "kg CO2 per kWh")
      ->check(CLI::NonNegativeNumber);
  report_cmd->add_option("--hours", o.hours, "Operating hours per year")
      ->check(CLI::NonNegativeNumber);
  report_cmd->add_option("--dead-threshold", o.dead_threshold, "Dead-server utilization")
      ->check(CLI::Range(0.0, 1.0));

  auto* power_cmd = app.add_subcommand("power", "Evaluate the power curve");
  add_common(power_cmd, false);
  power_cmd->add_option("--power-curve", o.power_curve, "Power curve (JSON)");
  power_cmd->add_option("--utilization", o.utilization, "Utilization fraction")
      ->required()
      ->check(CLI::Range(0.0, 1.0));

  auto* dead_cmd = app.add_subcommand("dead", "List dead servers");
  add_common(dead_cmd, true);
  dead_cmd->add_option("--dead-threshold", o.dead_threshold, "Dead-server utilization")
      ->check(CLI::Range(0.0, 1.0));

  std::vector<std::string> argv_storage{"greenpack"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "greenpack: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (plan_cmd->parsed()) return cmd_plan(o, out);
    if (report_cmd->parsed()) return cmd_report(o, out);
    if (power_cmd->parsed()) return cmd_power(o, out);
    if (dead_cmd->parsed()) return cmd_dead(o, out);
  } catch (const UsageError& e) {
    err << "greenpack: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "greenpack: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace greenpack::cli
