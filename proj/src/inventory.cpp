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

#include "greenpack/inventory.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "csv.hpp"
#include "greenpack/errors.hpp"
#include "greenpack/number_format.hpp"

namespace greenpack {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::pair<RaidLevel, std::string_view>, 6> kRaidNames = {{
    {RaidLevel::None, "none"},
    {RaidLevel::Raid0, "0"},
    {RaidLevel::Raid1, "1"},
    {RaidLevel::Raid5, "5"},
    {RaidLevel::Raid6, "6"},
    {RaidLevel::Raid10, "10"},
}};

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(';', start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(';');
    out += items[i];
  }
  return out;
}

// ---- CSV -----------------------------------------------------------------

class CsvFieldReader {
 public:
  CsvFieldReader(const csv::Row& row) : row_(row) {}

  const std::string& text(std::size_t column) const {
    return row_.fields[column];
  }

  std::int64_t integer(std::size_t column) const {
    auto value = parse_integer(text(column));
    if (!value) fail(column, "expected an integer");
    return *value;
  }

  double number(std::size_t column) const {
    auto value = parse_double(text(column));
    if (!value) fail(column, "expected a number");
    return *value;
  }

  [[noreturn]] void fail(std::size_t column, const std::string& what) const {
    throw ParseError(row_.line, "column '" +
                                    std::string(kInventoryColumns[column]) +
                                    "': " + what + ", got '" + text(column) +
                                    "'");
  }

 private:
  const csv::Row& row_;
};

ServerRecord record_from_csv(const csv::Row& row) {
  if (row.fields.size() != kInventoryColumns.size()) {
    throw ParseError(row.line, "expected " +
                                   std::to_string(kInventoryColumns.size()) +
                                   " fields, got " +
                                   std::to_string(row.fields.size()));
  }
  CsvFieldReader f(row);
  ServerRecord r;
  r.id = f.text(0);
  r.make_model = f.text(1);
  r.sockets = f.integer(2);
  r.cores_per_socket = f.integer(3);
  r.threads_per_core = f.integer(4);
  r.cache_mb = f.number(5);
  r.memory_gb = f.number(6);
  r.memory_speed_mhz = f.number(7);
  r.network_ports = f.integer(8);
  r.port_speed_gbps = f.number(9);
  r.disk_count = f.integer(10);
  r.disk_capacity_gb = f.number(11);
  if (!f.text(12).empty()) {
    r.raid_level = raid_level_from_string(f.text(12));
    if (!r.raid_level) f.fail(12, "expected one of none,0,1,5,6,10");
  }
  r.os_name = f.text(13);
  r.patch_level = f.text(14);
  r.applications = split_list(f.text(15));
  r.services = split_list(f.text(16));
  r.utilization = f.number(17);
  auto status = server_status_from_string(f.text(18));
  if (!status) f.fail(18, "expected active or idle");
  r.status = *status;
  r.peak_efficiency = f.text(19).empty() ? 1.0 : f.number(19);
  return r;
}

Inventory read_csv_inventory(std::string_view text, std::string source) {
  auto rows = csv::read(text);
  if (rows.empty()) throw ParseError(1, "missing header row");
  const auto& header = rows.front();
  const bool header_ok =
      header.fields.size() == kInventoryColumns.size() &&
      std::equal(header.fields.begin(), header.fields.end(),
                 kInventoryColumns.begin());
  if (!header_ok) {
    throw ParseError(header.line,
                     "header does not match the inventory column layout");
  }
  Inventory inv;
  inv.source = std::move(source);
  inv.servers.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    inv.servers.push_back(record_from_csv(rows[i]));
  }
  return inv;
}

std::string serialize_csv(const Inventory& inv) {
  std::string out;
  for (std::size_t i = 0; i < kInventoryColumns.size(); ++i) {
    if (i) out.push_back(',');
    out += kInventoryColumns[i];
  }
  out.push_back('\n');
  for (const auto& r : inv.servers) {
    const std::array<std::string, 20> cells = {
        csv::escape(r.id),
        csv::escape(r.make_model),
        std::to_string(r.sockets),
        std::to_string(r.cores_per_socket),
        std::to_string(r.threads_per_core),
        format_number(r.cache_mb),
        format_number(r.memory_gb),
        format_number(r.memory_speed_mhz),
        std::to_string(r.network_ports),
        format_number(r.port_speed_gbps),
        std::to_string(r.disk_count),
        format_number(r.disk_capacity_gb),
        r.raid_level ? std::string(to_string(*r.raid_level)) : std::string(),
        csv::escape(r.os_name),
        csv::escape(r.patch_level),
        csv::escape(join_list(r.applications), true),
        csv::escape(join_list(r.services), true),
        format_number(r.utilization),
        std::string(to_string(r.status)),
        format_number(r.peak_efficiency),
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back(',');
      out += cells[i];
    }
    out.push_back('\n');
  }
  return out;
}

// ---- JSON ----------------------------------------------------------------

class JsonFieldReader {
 public:
  JsonFieldReader(const ordered_json& object, std::size_t index)
      : object_(object), index_(index) {}

  const ordered_json* find(std::string_view key) const {
    auto it = object_.find(std::string(key));
    return it == object_.end() ? nullptr : &*it;
  }

  const ordered_json& require(std::string_view key) const {
    const auto* value = find(key);
    if (!value) fail(key, "missing key");
    return *value;
  }

  std::string text(std::string_view key) const {
    const auto& v = require(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  std::int64_t integer(std::string_view key) const {
    const auto& v = require(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9.0e18) {
        return static_cast<std::int64_t>(d);
      }
    }
    fail(key, "expected an integer");
  }

  double number(std::string_view key) const {
    const auto& v = require(key);
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }

  std::vector<std::string> list(std::string_view key) const {
    const auto* v = find(key);
    if (!v || v->is_null()) return {};
    if (v->is_string()) return split_list(v->get<std::string>());
    if (!v->is_array()) fail(key, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& item : *v) {
      if (!item.is_string()) fail(key, "expected an array of strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    throw ParseError(index_, "key '" + std::string(key) + "': " + what,
                     "record");
  }

 private:
  const ordered_json& object_;
  std::size_t index_;
};

ServerRecord record_from_json(const ordered_json& object, std::size_t index) {
  if (!object.is_object()) {
    throw ParseError(index, "expected an object", "record");
  }
  JsonFieldReader f(object, index);
  ServerRecord r;
  r.id = f.text("id");
  r.make_model = f.text("make_model");
  r.sockets = f.integer("sockets");
  r.cores_per_socket = f.integer("cores_per_socket");
  r.threads_per_core = f.integer("threads_per_core");
  r.cache_mb = f.number("cache_mb");
  r.memory_gb = f.number("memory_gb");
  r.memory_speed_mhz = f.number("memory_speed_mhz");
  r.network_ports = f.integer("network_ports");
  r.port_speed_gbps = f.number("port_speed_gbps");
  r.disk_count = f.integer("disk_count");
  r.disk_capacity_gb = f.number("disk_capacity_gb");
  if (const auto* raid = f.find("raid_level"); raid && !raid->is_null()) {
    std::string name;
    if (raid->is_string()) {
      name = raid->get<std::string>();
    } else if (raid->is_number_integer()) {
      name = std::to_string(raid->get<std::int64_t>());
    }
    r.raid_level = raid_level_from_string(name);
    if (!r.raid_level) f.fail("raid_level", "expected one of none,0,1,5,6,10");
  }
  r.os_name = f.text("os_name");
  r.patch_level = f.text("patch_level");
  r.applications = f.list("applications");
  r.services = f.list("services");
  r.utilization = f.number("utilization");
  auto status = server_status_from_string(f.text("status"));
  if (!status) f.fail("status", "expected active or idle");
  r.status = *status;
  if (const auto* eff = f.find("peak_efficiency"); eff && !eff->is_null()) {
    r.peak_efficiency = f.number("peak_efficiency");
  }
  return r;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

Inventory read_json_inventory(std::string_view text, std::string source) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1),
                     "malformed JSON");
  }
  if (!doc.is_array()) throw ParseError(1, "expected a top-level array");
  Inventory inv;
  inv.source = std::move(source);
  inv.servers.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    inv.servers.push_back(record_from_json(doc[i], i + 1));
  }
  return inv;
}

std::string serialize_json(const Inventory& inv) {
  ordered_json doc = ordered_json::array();
  for (const auto& r : inv.servers) {
    ordered_json o;
    o["id"] = r.id;
    o["make_model"] = r.make_model;
    o["sockets"] = r.sockets;
    o["cores_per_socket"] = r.cores_per_socket;
    o["threads_per_core"] = r.threads_per_core;
    o["cache_mb"] = r.cache_mb;
    o["memory_gb"] = r.memory_gb;
    o["memory_speed_mhz"] = r.memory_speed_mhz;
    o["network_ports"] = r.network_ports;
    o["port_speed_gbps"] = r.port_speed_gbps;
    o["disk_count"] = r.disk_count;
    o["disk_capacity_gb"] = r.disk_capacity_gb;
    o["raid_level"] = r.raid_level
                          ? ordered_json(std::string(to_string(*r.raid_level)))
                          : ordered_json(nullptr);
    o["os_name"] = r.os_name;
    o["patch_level"] = r.patch_level;
    o["applications"] = r.applications;
    o["services"] = r.services;
    o["utilization"] = r.utilization;
    o["status"] = std::string(to_string(r.status));
    o["peak_efficiency"] = r.peak_efficiency;
    doc.push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

}  // namespace

std::string_view to_string(RaidLevel level) {
  for (const auto& [value, name] : kRaidNames) {
    if (value == level) return name;
  }
  return "none";
}

std::string_view to_string(ServerStatus status) {
  return status == ServerStatus::Active ? "active" : "idle";
}

std::optional<RaidLevel> raid_level_from_string(std::string_view text) {
  for (const auto& [value, name] : kRaidNames) {
    if (name == text) return value;
  }
  return std::nullopt;
}

std::optional<ServerStatus> server_status_from_string(std::string_view text) {
  if (text == "active") return ServerStatus::Active;
  if (text == "idle") return ServerStatus::Idle;
  return std::nullopt;
}

Inventory read_inventory(std::string_view text, InventoryFormat format,
                         std::string source) {
  return format == InventoryFormat::Csv
             ? read_csv_inventory(text, std::move(source))
             : read_json_inventory(text, std::move(source));
}

Inventory parse_inventory(std::string_view text, InventoryFormat format,
                          std::string source) {
  Inventory inv = read_inventory(text, format, std::move(source));
  const auto violations = validate(inv);
  if (!violations.empty()) {
    const auto& v = violations.front();
    if (v.field == "id" && v.rule == "unique id") {
      throw DuplicateIdError(v.record_id);
    }
    throw ValidationError(v.record_id, v.field, v.rule);
  }
  return inv;
}

std::string serialize_inventory(const Inventory& inventory,
                                InventoryFormat format) {
  return format == InventoryFormat::Csv ? serialize_csv(inventory)
                                        : serialize_json(inventory);
}

std::vector<Violation> validate(const Inventory& inventory) {
  std::vector<Violation> out;
  std::unordered_set<std::string> seen;
  for (const auto& r : inventory.servers) {
    auto check = [&](bool ok, const char* field, const char* rule) {
      if (!ok) out.push_back({r.id, field, rule});
    };
    check(!r.id.empty(), "id", "non-empty id");
    check(seen.insert(r.id).second, "id", "unique id");
    check(r.sockets >= 1, "sockets", "sockets >= 1");
    check(r.cores_per_socket >= 1, "cores_per_socket", "cores_per_socket >= 1");
    check(r.threads_per_core >= 1, "threads_per_core", "threads_per_core >= 1");
    check(r.cache_mb >= 0.0, "cache_mb", "cache_mb >= 0");
    check(r.memory_gb >= 0.0, "memory_gb", "memory_gb >= 0");
    check(r.memory_speed_mhz >= 0.0, "memory_speed_mhz",
          "memory_speed_mhz >= 0");
    check(r.network_ports >= 0, "network_ports", "network_ports >= 0");
    check(r.port_speed_gbps >= 0.0, "port_speed_gbps", "port_speed_gbps >= 0");
    check(r.disk_count >= 0, "disk_count", "disk_count >= 0");
    check(r.disk_capacity_gb >= 0.0, "disk_capacity_gb",
          "disk_capacity_gb >= 0");
    check(r.utilization >= 0.0 && r.utilization <= 1.0, "utilization",
          "0 <= utilization <= 1");
    check(r.peak_efficiency > 0.0, "peak_efficiency", "peak_efficiency > 0");
  }
  return out;
}

std::vector<std::string> identify_dead(const Inventory& inventory,
                                       double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw DomainError("dead-server threshold must lie in [0, 1]");
  }
  std::vector<std::string> ids;
  for (const auto& r : inventory.servers) {
    if (r.utilization < threshold) ids.push_back(r.id);
  }
  return ids;
}

}  // namespace greenpack
