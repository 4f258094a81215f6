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

#ifndef GREENPACK_CLASSIFY_HPP
#define GREENPACK_CLASSIFY_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "greenpack/inventory.hpp"

namespace greenpack {

/// Resource pools, in consolidation order.
enum class Pool { Innovation, Production, MissionCritical };

inline constexpr std::array<Pool, 3> kPools = {
    Pool::Innovation, Pool::Production, Pool::MissionCritical};

inline constexpr std::size_t index_of(Pool pool) {
  return static_cast<std::size_t>(pool);
}

std::string_view to_string(Pool pool);
std::optional<Pool> pool_from_string(std::string_view text);

enum class ServerRole {
  NetworkInfrastructure,
  Terminal,
  FilePrint,
  Application,
  Web,
  IdentityManagement,
  Collaboration,
  Database,
};

std::string_view to_string(ServerRole role);

enum class ApplicationCategory {
  CommercialVsInHouse,
  Custom,
  LegacyVsUpdated,
  Infrastructure,
  BusinessSupport,
  LineOfBusiness,
  MissionCritical,
};

std::string_view to_string(ApplicationCategory category);
std::optional<ApplicationCategory> application_category_from_string(
    std::string_view text);

enum class RuleOperator { Contains, Equals, LessThan, GreaterThan };

/// One predicate over a named ServerRecord field.
///
/// `contains` is a case-insensitive substring test; on list fields
/// (applications, services) it matches when any element contains the value.
/// `eq` compares strings exactly (list fields: any element equal) and
/// numbers by value. `lt` and `gt` apply to numeric fields only. Besides the
/// record's own fields, `tags` names applications and services together.
struct ClassificationRule {
  std::string field;
  RuleOperator op = RuleOperator::Contains;
  std::variant<std::string, double> value;
  Pool pool = Pool::Innovation;
};

struct ClassificationRules {
  std::vector<ClassificationRule> rules;
  Pool default_pool = Pool::Innovation;
};

/// Shipped keyword rules: realtime/critical tags go to MissionCritical,
/// SLA/production tags to Production, test/QA/deployment/volume tags to
/// Innovation; anything else falls back to Innovation.
ClassificationRules default_rules();

/// Parses a rules document: either a bare array of
/// {field, operator, value, pool} or an object {rules: [...], default_pool}.
/// Throws ParseError.
ClassificationRules parse_rules(std::string_view json_text);

/// First matching rule wins, else `rules.default_pool`. Throws UsageError
/// for a rule naming an unknown field or a numeric operator on a text field.
Pool classify_pool(const ServerRecord& record, const ClassificationRules& rules);

struct PoolStats {
  std::size_t count = 0;
  double mean_utilization = 0.0;  // unweighted across members; 0 when empty
};

struct PoolAssignment {
  // Inventory order.
  std::vector<std::pair<std::string, Pool>> members;
  std::array<PoolStats, 3> stats{};

  const PoolStats& operator[](Pool pool) const { return stats[index_of(pool)]; }
  std::size_t total_count() const;
  /// Count-weighted mean utilization over every server.
  double overall_mean_utilization() const;
  std::optional<Pool> pool_of(std::string_view id) const;
};

PoolAssignment partition(const Inventory& inventory,
                         const ClassificationRules& rules);

/// Keyword match over applications and services; Application when nothing
/// matches.
ServerRole classify_role(const ServerRecord& record);

/// Exact name lookup in `overrides` first, then keyword match; unmatched
/// names are Infrastructure.
ApplicationCategory classify_application(
    std::string_view name,
    const std::map<std::string, ApplicationCategory, std::less<>>& overrides =
        {});

}  // namespace greenpack

#endif  // GREENPACK_CLASSIFY_HPP
