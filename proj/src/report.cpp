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

#include "greenpack/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csv.hpp"
#include "greenpack/errors.hpp"
#include "greenpack/number_format.hpp"
#include "json.hpp"

namespace greenpack {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 11> kRowColumns = {
    "pool",          "pre_count",
    "pre_utilization", "pre_watts",
    "ratio",         "post_host_count",
    "post_utilization_stated", "post_utilization_computed",
    "post_watts",    "saving_watts",
    "saving_percent"};

double percent_of(double part, double whole) {
  return whole > 0.0 ? part / whole * 100.0 : 0.0;
}

// kWh keeps the sign of the saving.
double signed_annual(double watts, double hours) {
  return watts >= 0.0 ? annual_energy(watts, hours)
                      : -annual_energy(-watts, hours);
}

std::string pool_label(Pool pool) {
  switch (pool) {
    case Pool::Innovation: return "Innovation";
    case Pool::Production: return "Production";
    case Pool::MissionCritical: return "Mission Critical";
  }
  return {};
}

std::string percent_text(double fraction) {
  return format_fixed(fraction * 100.0, 1) + "%";
}

std::string ratio_text(double ratio) {
  if (std::floor(ratio) == ratio) return format_number(ratio) + ":1";
  return format_fixed(ratio, 1) + ":1";
}

std::string watts_text(double watts) {
  if (std::floor(watts) == watts) return format_number(watts);
  return format_fixed(watts, 1);
}

std::string pad(std::string_view text, std::size_t width) {
  std::string out(text);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += i + 1 == row.size() ? row[i] : pad(row[i], widths[i] + 2);
    }
    out += line + "\n";
  }
  return out;
}

std::string render_text(const EnergyReport& r) {
  auto row = [&](std::string label, auto cell) {
    std::vector<std::string> out{std::move(label)};
    for (const auto& p : r.pools) out.push_back(cell(p));
    out.push_back(cell(r.total));
    return out;
  };
  std::vector<std::string> header{"Categories (Servers)"};
  for (Pool pool : kPools) header.push_back(pool_label(pool));
  header.push_back("Total");

  auto pre_util = row("Utilization", [](const ReportRow& x) {
    return percent_text(x.pre_utilization);
  });
  pre_util.back() += " (~" + format_fixed(r.total.pre_utilization * 100.0, 0) + "%)";

  std::string out = "Pre-consolidation\n";
  out += table({
      header,
      row("Server count",
          [](const ReportRow& x) { return std::to_string(x.pre_count); }),
      pre_util,
      row("Watts", [](const ReportRow& x) { return watts_text(x.pre_watts); }),
  });
  out += "\nPost-consolidation\n";
  header.front() = "Categories";
  out += table({
      header,
      row("Consolidation ratio",
          [](const ReportRow& x) { return ratio_text(x.ratio); }),
      row("Post utilization (stated)",
          [](const ReportRow& x) {
            return percent_text(x.post_utilization_stated);
          }),
      row("Post utilization (computed)",
          [](const ReportRow& x) {
            return percent_text(x.post_utilization_computed);
          }),
      row("Hosts",
          [](const ReportRow& x) { return std::to_string(x.post_host_count); }),
      row("Post consolidation watts",
          [](const ReportRow& x) { return watts_text(x.post_watts); }),
      row("Energy saving (W)",
          [](const ReportRow& x) { return watts_text(x.saving_watts); }),
      row("Energy saving (%)",
          [](const ReportRow& x) {
            return format_fixed(x.saving_percent, 1) + "%";
          }),
  });
  out += "\n";
  out += "Annual energy saved: " + format_fixed(r.annual_kwh_saved, 1) +
         " kWh (" + format_number(r.hours_per_year) + " h/year)\n";
  out += "CO2 avoided: " + format_fixed(r.co2_kg_saved, 1) + " kg (" +
         format_number(r.emission_factor) + " kg/kWh)\n";
  out += "Dead servers: ";
  if (r.dead_server_ids.empty()) {
    out += "none";
  } else {
    for (std::size_t i = 0; i < r.dead_server_ids.size(); ++i) {
      if (i) out += ", ";
      out += r.dead_server_ids[i];
    }
  }
  out += "\n";
  out += "Mode: " + std::string(to_string(r.mode)) +
         ", energy model: " + std::string(to_string(r.energy_model)) +
         ", power curve: " + r.power_curve + "\n";
  return out;
}

// ---- JSON ----------------------------------------------------------------

ordered_json row_to_json(const ReportRow& x) {
  ordered_json o;
  o["pool"] = x.name;
  o["pre_count"] = x.pre_count;
  o["pre_utilization"] = x.pre_utilization;
  o["pre_watts"] = x.pre_watts;
  o["ratio"] = x.ratio;
  o["post_host_count"] = x.post_host_count;
  o["post_utilization_stated"] = x.post_utilization_stated;
  o["post_utilization_computed"] = x.post_utilization_computed;
  o["post_watts"] = x.post_watts;
  o["saving_watts"] = x.saving_watts;
  o["saving_percent"] = x.saving_percent;
  return o;
}

std::string render_json(const EnergyReport& r) {
  ordered_json o;
  o["mode"] = to_string(r.mode);
  o["energy_model"] = to_string(r.energy_model);
  o["power_curve"] = r.power_curve;
  o["hours_per_year"] = r.hours_per_year;
  o["emission_factor_kg_per_kwh"] = r.emission_factor;
  o["pools"] = ordered_json::array();
  for (const auto& p : r.pools) o["pools"].push_back(row_to_json(p));
  o["total"] = row_to_json(r.total);
  o["annual_kwh_saved"] = r.annual_kwh_saved;
  o["co2_kg_saved"] = r.co2_kg_saved;
  o["dead_server_ids"] = r.dead_server_ids;
  return o.dump(2) + "\n";
}

template <typename T>
T json_get(const ordered_json& o, const char* key) {
  auto it = o.find(key);
  if (it == o.end()) throw ParseError(1, std::string("missing key '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(1, std::string("key '") + key + "' has the wrong type");
  }
}

ReportRow row_from_json(const ordered_json& o) {
  if (!o.is_object()) throw ParseError(1, "report row must be an object");
  ReportRow x;
  x.name = json_get<std::string>(o, "pool");
  x.pre_count = json_get<std::size_t>(o, "pre_count");
  x.pre_utilization = json_get<double>(o, "pre_utilization");
  x.pre_watts = json_get<double>(o, "pre_watts");
  x.ratio = json_get<double>(o, "ratio");
  x.post_host_count = json_get<std::size_t>(o, "post_host_count");
  x.post_utilization_stated = json_get<double>(o, "post_utilization_stated");
  x.post_utilization_computed = json_get<double>(o, "post_utilization_computed");
  x.post_watts = json_get<double>(o, "post_watts");
  x.saving_watts = json_get<double>(o, "saving_watts");
  x.saving_percent = json_get<double>(o, "saving_percent");
  return x;
}

PlanMode mode_from_string(std::string_view text) {
  if (text == "fixed") return PlanMode::FixedRatio;
  if (text == "packed") return PlanMode::Packed;
  throw ParseError(1, "unknown plan mode '" + std::string(text) + "'");
}

EnergyModel model_from_text(std::string_view text) {
  auto m = energy_model_from_string(text);
  if (!m) throw ParseError(1, "unknown energy model '" + std::string(text) + "'");
  return *m;
}

EnergyReport parse_json_report(std::string_view text) {
  ordered_json o;
  try {
    o = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("malformed report JSON: ") + e.what());
  }
  if (!o.is_object()) throw ParseError(1, "report must be a JSON object");
  EnergyReport r;
  r.mode = mode_from_string(json_get<std::string>(o, "mode"));
  r.energy_model = model_from_text(json_get<std::string>(o, "energy_model"));
  r.power_curve = json_get<std::string>(o, "power_curve");
  r.hours_per_year = json_get<double>(o, "hours_per_year");
  r.emission_factor = json_get<double>(o, "emission_factor_kg_per_kwh");
  const auto pools = json_get<ordered_json>(o, "pools");
  if (!pools.is_array() || pools.size() != 3) {
    throw ParseError(1, "'pools' must hold three rows");
  }
  for (std::size_t i = 0; i < 3; ++i) r.pools[i] = row_from_json(pools[i]);
  r.total = row_from_json(json_get<ordered_json>(o, "total"));
  r.annual_kwh_saved = json_get<double>(o, "annual_kwh_saved");
  r.co2_kg_saved = json_get<double>(o, "co2_kg_saved");
  r.dead_server_ids = json_get<std::vector<std::string>>(o, "dead_server_ids");
  return r;
}

// ---- CSV -----------------------------------------------------------------

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(',');
    out += csv::escape(cells[i]);
  }
  return out + "\n";
}

std::string render_csv(const EnergyReport& r) {
  std::string out =
      csv_line(std::vector<std::string>(kRowColumns.begin(), kRowColumns.end()));
  auto emit = [&](const ReportRow& x) {
    out += csv_line({x.name, std::to_string(x.pre_count),
                     format_number(x.pre_utilization), format_number(x.pre_watts),
                     format_number(x.ratio), std::to_string(x.post_host_count),
                     format_number(x.post_utilization_stated),
                     format_number(x.post_utilization_computed),
                     format_number(x.post_watts), format_number(x.saving_watts),
                     format_number(x.saving_percent)});
  };
  for (const auto& p : r.pools) emit(p);
  emit(r.total);
  out += "\n";
  out += csv_line({"key", "value"});
  out += csv_line({"mode", std::string(to_string(r.mode))});
  out += csv_line({"energy_model", std::string(to_string(r.energy_model))});
  out += csv_line({"power_curve", r.power_curve});
  out += csv_line({"hours_per_year", format_number(r.hours_per_year)});
  out += csv_line({"emission_factor_kg_per_kwh", format_number(r.emission_factor)});
  out += csv_line({"annual_kwh_saved", format_number(r.annual_kwh_saved)});
  out += csv_line({"co2_kg_saved", format_number(r.co2_kg_saved)});
  for (const auto& id : r.dead_server_ids) out += csv_line({"dead_server_id", id});
  return out;
}

double csv_number(const csv::Row& row, std::size_t i) {
  auto v = parse_double(row.fields[i]);
  if (!v) throw ParseError(row.line, "expected a number in column " + std::to_string(i + 1));
  return *v;
}

std::size_t csv_count(const csv::Row& row, std::size_t i) {
  auto v = parse_integer(row.fields[i]);
  if (!v || *v < 0) {
    throw ParseError(row.line, "expected a count in column " + std::to_string(i + 1));
  }
  return static_cast<std::size_t>(*v);
}

EnergyReport parse_csv_report(std::string_view text) {
  const auto rows = csv::read(text);
  if (rows.size() < 6) throw ParseError(1, "report CSV is truncated");
  const bool header_ok =
      rows[0].fields.size() == kRowColumns.size() &&
      std::equal(rows[0].fields.begin(), rows[0].fields.end(), kRowColumns.begin());
  if (!header_ok) throw ParseError(rows[0].line, "unexpected report header");

  EnergyReport r;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& row = rows[1 + i];
    if (row.fields.size() != kRowColumns.size()) {
      throw ParseError(row.line, "report row has the wrong number of fields");
    }
    ReportRow x;
    x.name = row.fields[0];
    x.pre_count = csv_count(row, 1);
    x.pre_utilization = csv_number(row, 2);
    x.pre_watts = csv_number(row, 3);
    x.ratio = csv_number(row, 4);
    x.post_host_count = csv_count(row, 5);
    x.post_utilization_stated = csv_number(row, 6);
    x.post_utilization_computed = csv_number(row, 7);
    x.post_watts = csv_number(row, 8);
    x.saving_watts = csv_number(row, 9);
    x.saving_percent = csv_number(row, 10);
    (i < 3 ? r.pools[i] : r.total) = std::move(x);
  }
  if (rows[5].fields != std::vector<std::string>{"key", "value"}) {
    throw ParseError(rows[5].line, "expected the key,value section");
  }
  for (std::size_t i = 6; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 2) throw ParseError(row.line, "expected key,value");
    const auto& key = row.fields[0];
    const auto& value = row.fields[1];
    auto number = [&] { return csv_number(row, 1); };
    if (key == "mode") r.mode = mode_from_string(value);
    else if (key == "energy_model") r.energy_model = model_from_text(value);
    else if (key == "power_curve") r.power_curve = value;
    else if (key == "hours_per_year") r.hours_per_year = number();
    else if (key == "emission_factor_kg_per_kwh") r.emission_factor = number();
    else if (key == "annual_kwh_saved") r.annual_kwh_saved = number();
    else if (key == "co2_kg_saved") r.co2_kg_saved = number();
    else if (key == "dead_server_id") r.dead_server_ids.push_back(value);
    else throw ParseError(row.line, "unknown report key '" + key + "'");
  }
  return r;
}

}  // namespace

std::string_view to_string(EnergyModel model) {
  return model == EnergyModel::Paper ? "paper" : "curve";
}

std::optional<EnergyModel> energy_model_from_string(std::string_view text) {
  if (text == "paper") return EnergyModel::Paper;
  if (text == "curve") return EnergyModel::Curve;
  return std::nullopt;
}

std::optional<OutputFormat> output_format_from_string(std::string_view text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  return std::nullopt;
}

EnergyReport build_report(const Inventory& inventory,
                          const PoolAssignment& assignment,
                          const ConsolidationPlan& plan,
                          const PowerCurve& curve,
                          const ReportOptions& options) {
  EnergyReport r;
  r.mode = plan.mode;
  r.energy_model = options.energy_model;
  r.power_curve = curve.name();
  r.hours_per_year = options.hours_per_year;
  r.emission_factor = options.emission_factor.kg_co2_per_kwh;

  std::array<double, 3> curve_watts{};
  if (options.energy_model == EnergyModel::Curve) {
    for (const auto& s : inventory.servers) {
      auto pool = assignment.pool_of(s.id);
      if (!pool) throw DomainError("server '" + s.id + "' has no pool assignment");
      curve_watts[index_of(*pool)] += power_at(curve, s.utilization);
    }
  }

  auto& t = r.total;
  t.name = "total";
  double stated_weighted = 0.0;
  double computed_weighted = 0.0;
  for (Pool pool : kPools) {
    const auto& stats = assignment[pool];
    const auto& pp = plan[pool];
    auto& x = r.pools[index_of(pool)];
    x.name = std::string(to_string(pool));
    x.pre_count = stats.count;
    x.pre_utilization = stats.mean_utilization;
    x.pre_watts = options.energy_model == EnergyModel::Paper
                      ? pool_energy(stats.count, curve.base_watts()).watts
                      : curve_watts[index_of(pool)];
    x.ratio = pp.ratio;
    x.post_host_count = pp.host_count;
    x.post_utilization_stated = pp.post_utilization_stated;
    x.post_utilization_computed = pp.post_utilization_computed;
    x.post_watts = pp.post_total_watts;
    x.saving_watts = x.pre_watts - x.post_watts;
    x.saving_percent = percent_of(x.saving_watts, x.pre_watts);

    t.pre_count += x.pre_count;
    t.pre_watts += x.pre_watts;
    t.post_host_count += x.post_host_count;
    t.post_watts += x.post_watts;
    t.saving_watts += x.saving_watts;
    const auto hosts = static_cast<double>(x.post_host_count);
    stated_weighted += x.post_utilization_stated * hosts;
    computed_weighted += x.post_utilization_computed * hosts;
  }
  t.pre_utilization = assignment.overall_mean_utilization();
  t.ratio = t.post_host_count ? static_cast<double>(t.pre_count) /
                                    static_cast<double>(t.post_host_count)
                              : 1.0;
  if (t.post_host_count) {
    const auto hosts = static_cast<double>(t.post_host_count);
    t.post_utilization_stated = stated_weighted / hosts;
    t.post_utilization_computed = computed_weighted / hosts;
  } else if (plan.mode == PlanMode::FixedRatio) {
    t.post_utilization_stated = kFixedRatioPostUtilization;
  }
  t.saving_percent = percent_of(t.saving_watts, t.pre_watts);

  r.annual_kwh_saved = signed_annual(t.saving_watts, r.hours_per_year);
  r.co2_kg_saved = r.annual_kwh_saved >= 0.0
                       ? co2_mass(r.annual_kwh_saved, options.emission_factor)
                       : -co2_mass(-r.annual_kwh_saved, options.emission_factor);
  r.dead_server_ids = identify_dead(inventory, options.dead_threshold);
  return r;
}

std::string render(const EnergyReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: return render_text(report);
    case OutputFormat::Csv: return render_csv(report);
    case OutputFormat::Json: return render_json(report);
  }
  throw UsageError("unknown output format");
}

EnergyReport parse_report(std::string_view text, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return parse_csv_report(text);
    case OutputFormat::Json: return parse_json_report(text);
    case OutputFormat::Text: break;
  }
  throw UsageError("text reports cannot be parsed back");
}

std::string render_assignment(const Inventory& inventory,
                              const PoolAssignment& assignment,
                              OutputFormat format) {
  std::vector<std::tuple<std::string, Pool, ServerRole>> servers;
  for (std::size_t i = 0; i < assignment.members.size(); ++i) {
    const auto& [id, pool] = assignment.members[i];
    const auto role = i < inventory.servers.size()
                          ? classify_role(inventory.servers[i])
                          : ServerRole::Application;
    servers.emplace_back(id, pool, role);
  }
  if (format == OutputFormat::Json) {
    ordered_json o;
    o["servers"] = ordered_json::array();
    for (const auto& [id, pool, role] : servers) {
      o["servers"].push_back(
          {{"id", id}, {"pool", to_string(pool)}, {"role", to_string(role)}});
    }
    ordered_json pools;
    for (Pool pool : kPools) {
      pools[std::string(to_string(pool))] = {
          {"count", assignment[pool].count},
          {"mean_utilization", assignment[pool].mean_utilization}};
    }
    o["pools"] = pools;
    o["total_count"] = assignment.total_count();
    o["overall_mean_utilization"] = assignment.overall_mean_utilization();
    return o.dump(2) + "\n";
  }
  if (format == OutputFormat::Csv) {
    std::string out = csv_line({"id", "pool", "role"});
    for (const auto& [id, pool, role] : servers) {
      out += csv_line({id, std::string(to_string(pool)), std::string(to_string(role))});
    }
    return out;
  }
  std::vector<std::vector<std::string>> rows{{"Pool", "Servers", "Mean utilization"}};
  for (Pool pool : kPools) {
    rows.push_back({pool_label(pool), std::to_string(assignment[pool].count),
                    percent_text(assignment[pool].mean_utilization)});
  }
  rows.push_back({"Total", std::to_string(assignment.total_count()),
                  percent_text(assignment.overall_mean_utilization())});
  std::string out = table(rows) + "\n";
  std::vector<std::vector<std::string>> members{{"Id", "Pool", "Role"}};
  for (const auto& [id, pool, role] : servers) {
    members.push_back({id, std::string(to_string(pool)), std::string(to_string(role))});
  }
  return out + table(members);
}

std::string render_plan(const ConsolidationPlan& plan, OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json o;
    o["mode"] = to_string(plan.mode);
    o["pools"] = ordered_json::array();
    for (const auto& p : plan.pools) {
      ordered_json po;
      po["pool"] = to_string(p.pool);
      po["server_count"] = p.server_count;
      po["ratio"] = p.ratio;
      po["host_count"] = p.host_count;
      po["post_utilization_stated"] = p.post_utilization_stated;
      po["post_utilization_computed"] = p.post_utilization_computed;
      po["post_per_server_watts"] = p.post_per_server_watts;
      po["post_total_watts"] = p.post_total_watts;
      po["hosts"] = ordered_json::array();
      for (const auto& h : p.hosts) {
        po["hosts"].push_back({{"id", h.id},
                               {"capacity", h.capacity},
                               {"load", h.load},
                               {"utilization", h.utilization()},
                               {"guests", h.guests}});
      }
      o["pools"].push_back(std::move(po));
    }
    o["total_hosts"] = plan.total_hosts();
    o["total_watts"] = plan.total_watts();
    return o.dump(2) + "\n";
  }
  if (format == OutputFormat::Csv) {
    std::string out = csv_line({"pool", "host", "capacity", "load", "utilization", "guests"});
    for (const auto& p : plan.pools) {
      if (plan.mode == PlanMode::FixedRatio) {
        out += csv_line({std::string(to_string(p.pool)), std::to_string(p.host_count),
                         "", "", format_number(p.post_utilization_stated), ""});
        continue;
      }
      for (const auto& h : p.hosts) {
        std::string guests;
        for (std::size_t i = 0; i < h.guests.size(); ++i) {
          if (i) guests += ';';
          guests += h.guests[i];
        }
        out += csv_line({std::string(to_string(p.pool)), h.id, format_number(h.capacity),
                         format_number(h.load), format_number(h.utilization()), guests});
      }
    }
    return out;
  }
  std::vector<std::vector<std::string>> rows{
      {"Pool", "Servers", "Ratio", "Hosts", "Utilization", "Watts/host", "Watts"}};
  for (const auto& p : plan.pools) {
    rows.push_back({pool_label(p.pool), std::to_string(p.server_count),
                    ratio_text(p.ratio), std::to_string(p.host_count),
                    percent_text(p.post_utilization_computed),
                    watts_text(p.post_per_server_watts),
                    watts_text(p.post_total_watts)});
  }
  rows.push_back({"Total", "", "", std::to_string(plan.total_hosts()), "", "",
                  watts_text(plan.total_watts())});
  std::string out = "Mode: " + std::string(to_string(plan.mode)) + "\n" + table(rows);
  if (plan.mode == PlanMode::Packed) {
    for (const auto& p : plan.pools) {
      for (const auto& h : p.hosts) {
        out += "\n" + std::string(to_string(p.pool)) + " " + h.id + " (" +
               percent_text(h.utilization()) + "):";
        for (const auto& g : h.guests) out += " " + g;
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace greenpack
