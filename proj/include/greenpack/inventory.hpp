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

#ifndef GREENPACK_INVENTORY_HPP
#define GREENPACK_INVENTORY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace greenpack {

enum class RaidLevel { None, Raid0, Raid1, Raid5, Raid6, Raid10 };
enum class ServerStatus { Active, Idle };

std::string_view to_string(RaidLevel level);
std::string_view to_string(ServerStatus status);
std::optional<RaidLevel> raid_level_from_string(std::string_view text);
std::optional<ServerStatus> server_status_from_string(std::string_view text);

/// One inventoried physical server as produced by a discovery export.
///
/// Counts are signed so that out-of-range input survives reading and can be
/// reported by `validate` instead of wrapping silently.
struct ServerRecord {
  std::string id;
  std::string make_model;
  std::int64_t sockets = 1;
  std::int64_t cores_per_socket = 1;
  std::int64_t threads_per_core = 1;
  double cache_mb = 0.0;
  double memory_gb = 0.0;
  double memory_speed_mhz = 0.0;
  std::int64_t network_ports = 0;
  double port_speed_gbps = 0.0;
  std::int64_t disk_count = 0;
  double disk_capacity_gb = 0.0;
  std::optional<RaidLevel> raid_level;
  std::string os_name;
  std::string patch_level;
  std::vector<std::string> applications;
  std::vector<std::string> services;
  // Measured average processor utilization, a fraction in [0, 1].
  double utilization = 0.0;
  ServerStatus status = ServerStatus::Active;
  // Per-core capacity at full utilization, in abstract capacity units.
  double peak_efficiency = 1.0;

  friend bool operator==(const ServerRecord&, const ServerRecord&) = default;
};

struct Inventory {
  std::vector<ServerRecord> servers;
  std::string source;

  friend bool operator==(const Inventory&, const Inventory&) = default;
};

enum class InventoryFormat { Csv, Json };

/// Exact CSV header, in column order.
inline constexpr std::array<std::string_view, 20> kInventoryColumns = {
    "id",           "make_model",      "sockets",          "cores_per_socket",
    "threads_per_core", "cache_mb",    "memory_gb",        "memory_speed_mhz",
    "network_ports", "port_speed_gbps", "disk_count",      "disk_capacity_gb",
    "raid_level",   "os_name",         "patch_level",      "applications",
    "services",     "utilization",     "status",           "peak_efficiency"};

/// Utilization strictly below this marks a server as dead.
inline constexpr double kDefaultDeadThreshold = 0.005;

struct Violation {
  std::string record_id;
  std::string field;
  std::string rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Syntax-only read: malformed input throws ParseError, but field
/// invariants are not checked.
Inventory read_inventory(std::string_view text, InventoryFormat format,
                         std::string source = {});

/// Read and enforce every invariant. Throws ParseError on bad syntax,
/// DuplicateIdError on a repeated id, ValidationError on the first
/// out-of-range field.
Inventory parse_inventory(std::string_view text, InventoryFormat format,
                          std::string source = {});

std::string serialize_inventory(const Inventory& inventory,
                                InventoryFormat format);

/// All invariant violations, in record order. Empty iff the inventory is
/// valid.
std::vector<Violation> validate(const Inventory& inventory);

/// Ids with utilization strictly below `threshold`, in input order.
/// Throws DomainError unless 0 <= threshold <= 1.
std::vector<std::string> identify_dead(const Inventory& inventory,
                                       double threshold = kDefaultDeadThreshold);

}  // namespace greenpack

#endif  // GREENPACK_INVENTORY_HPP
