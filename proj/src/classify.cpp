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

#include "greenpack/classify.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "greenpack/errors.hpp"
#include "greenpack/number_format.hpp"
#include "json.hpp"

namespace greenpack {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Lowercase with '_', '-' and spaces removed, for lenient enum names.
std::string squash(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (c == '_' || c == '-' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
  return lower(haystack).find(lower(needle)) != std::string::npos;
}

using FieldValue =
    std::variant<std::string, const std::vector<std::string>*, double>;

std::vector<std::string> tags_of(const ServerRecord& r) {
  std::vector<std::string> tags = r.applications;
  tags.insert(tags.end(), r.services.begin(), r.services.end());
  return tags;
}

FieldValue field_value(const ServerRecord& r, std::string_view field,
                       std::vector<std::string>& scratch) {
  if (field == "id") return r.id;
  if (field == "make_model") return r.make_model;
  if (field == "os_name") return r.os_name;
  if (field == "patch_level") return r.patch_level;
  if (field == "status") return std::string(to_string(r.status));
  if (field == "raid_level") {
    return r.raid_level ? std::string(to_string(*r.raid_level)) : std::string();
  }
  if (field == "applications") return &r.applications;
  if (field == "services") return &r.services;
  if (field == "tags") {
    scratch = tags_of(r);
    return &scratch;
  }
  if (field == "sockets") return static_cast<double>(r.sockets);
  if (field == "cores_per_socket") return static_cast<double>(r.cores_per_socket);
  if (field == "threads_per_core") return static_cast<double>(r.threads_per_core);
  if (field == "cache_mb") return r.cache_mb;
  if (field == "memory_gb") return r.memory_gb;
  if (field == "memory_speed_mhz") return r.memory_speed_mhz;
  if (field == "network_ports") return static_cast<double>(r.network_ports);
  if (field == "port_speed_gbps") return r.port_speed_gbps;
  if (field == "disk_count") return static_cast<double>(r.disk_count);
  if (field == "disk_capacity_gb") return r.disk_capacity_gb;
  if (field == "utilization") return r.utilization;
  if (field == "peak_efficiency") return r.peak_efficiency;
  throw UsageError("classification rule names unknown field '" +
                   std::string(field) + "'");
}

std::string value_text(const std::variant<std::string, double>& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  return format_number(std::get<double>(value));
}

bool text_matches(std::string_view field_text, RuleOperator op,
                  std::string_view wanted) {
  switch (op) {
    case RuleOperator::Contains:
      return contains_ci(field_text, wanted);
    case RuleOperator::Equals:
      return field_text == wanted;
    default:
      throw UsageError("operators lt/gt apply to numeric fields only");
  }
}

bool rule_matches(const ServerRecord& r, const ClassificationRule& rule) {
  std::vector<std::string> scratch;
  const FieldValue value = field_value(r, rule.field, scratch);
  if (const auto* number = std::get_if<double>(&value)) {
    double wanted = 0.0;
    if (const auto* d = std::get_if<double>(&rule.value)) {
      wanted = *d;
    } else {
      auto parsed = parse_double(std::get<std::string>(rule.value));
      if (!parsed) {
        throw UsageError("rule on numeric field '" + rule.field +
                         "' needs a numeric value");
      }
      wanted = *parsed;
    }
    switch (rule.op) {
      case RuleOperator::Equals: return *number == wanted;
      case RuleOperator::LessThan: return *number < wanted;
      case RuleOperator::GreaterThan: return *number > wanted;
      case RuleOperator::Contains:
        return contains_ci(format_number(*number), value_text(rule.value));
    }
    return false;
  }
  const std::string wanted = value_text(rule.value);
  if (const auto* list = std::get_if<const std::vector<std::string>*>(&value)) {
    return std::any_of((*list)->begin(), (*list)->end(),
                       [&](const std::string& item) {
                         return text_matches(item, rule.op, wanted);
                       });
  }
  return text_matches(std::get<std::string>(value), rule.op, wanted);
}

std::optional<RuleOperator> operator_from_string(std::string_view text) {
  const std::string s = lower(text);
  if (s == "contains") return RuleOperator::Contains;
  if (s == "eq") return RuleOperator::Equals;
  if (s == "lt") return RuleOperator::LessThan;
  if (s == "gt") return RuleOperator::GreaterThan;
  return std::nullopt;
}

bool any_tag_matches(const std::vector<std::string>& tags,
                     std::initializer_list<std::string_view> words) {
  return std::any_of(tags.begin(), tags.end(), [&](const std::string& tag) {
    return std::any_of(words.begin(), words.end(), [&](std::string_view w) {
      return contains_ci(tag, w);
    });
  });
}

std::vector<std::string> tokens_of(std::string_view name) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

}  // namespace

std::string_view to_string(Pool pool) {
  switch (pool) {
    case Pool::Innovation: return "innovation";
    case Pool::Production: return "production";
    case Pool::MissionCritical: return "mission_critical";
  }
  return "innovation";
}

std::optional<Pool> pool_from_string(std::string_view text) {
  const std::string s = squash(text);
  if (s == "innovation") return Pool::Innovation;
  if (s == "production") return Pool::Production;
  if (s == "missioncritical") return Pool::MissionCritical;
  return std::nullopt;
}

std::string_view to_string(ServerRole role) {
  switch (role) {
    case ServerRole::NetworkInfrastructure: return "network_infrastructure";
    case ServerRole::Terminal: return "terminal";
    case ServerRole::FilePrint: return "file_print";
    case ServerRole::Application: return "application";
    case ServerRole::Web: return "web";
    case ServerRole::IdentityManagement: return "identity_management";
    case ServerRole::Collaboration: return "collaboration";
    case ServerRole::Database: return "database";
  }
  return "application";
}

std::string_view to_string(ApplicationCategory category) {
  switch (category) {
    case ApplicationCategory::CommercialVsInHouse: return "commercial_vs_in_house";
    case ApplicationCategory::Custom: return "custom";
    case ApplicationCategory::LegacyVsUpdated: return "legacy_vs_updated";
    case ApplicationCategory::Infrastructure: return "infrastructure";
    case ApplicationCategory::BusinessSupport: return "business_support";
    case ApplicationCategory::LineOfBusiness: return "line_of_business";
    case ApplicationCategory::MissionCritical: return "mission_critical";
  }
  return "infrastructure";
}

std::optional<ApplicationCategory> application_category_from_string(
    std::string_view text) {
  const std::string s = squash(text);
  for (auto c : {ApplicationCategory::CommercialVsInHouse,
                 ApplicationCategory::Custom,
                 ApplicationCategory::LegacyVsUpdated,
                 ApplicationCategory::Infrastructure,
                 ApplicationCategory::BusinessSupport,
                 ApplicationCategory::LineOfBusiness,
                 ApplicationCategory::MissionCritical}) {
    if (squash(to_string(c)) == s) return c;
  }
  return std::nullopt;
}

ClassificationRules default_rules() {
  ClassificationRules rules;
  auto add = [&](RuleOperator op, const char* word, Pool pool) {
    rules.rules.push_back({"tags", op, std::string(word), pool});
  };
  using enum RuleOperator;
  add(Contains, "realtime", Pool::MissionCritical);
  add(Contains, "real-time", Pool::MissionCritical);
  add(Contains, "critical", Pool::MissionCritical);
  add(Equals, "sla", Pool::Production);
  add(Contains, "sla-", Pool::Production);
  add(Contains, "production", Pool::Production);
  add(Equals, "prod", Pool::Production);
  add(Equals, "qa", Pool::Innovation);
  add(Contains, "test", Pool::Innovation);
  add(Contains, "deploy", Pool::Innovation);
  add(Contains, "staging", Pool::Innovation);
  add(Equals, "dev", Pool::Innovation);
  add(Equals, "volume", Pool::Innovation);
  rules.default_pool = Pool::Innovation;
  return rules;
}

ClassificationRules parse_rules(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("malformed rules JSON: ") + e.what());
  }
  ClassificationRules rules;
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (auto it = doc.find("default_pool"); it != doc.end()) {
      auto pool = it->is_string() ? pool_from_string(it->get<std::string>())
                                  : std::nullopt;
      if (!pool) throw ParseError(1, "default_pool: unknown pool");
      rules.default_pool = *pool;
    }
    auto it = doc.find("rules");
    if (it == doc.end()) throw ParseError(1, "missing 'rules' array");
    list = &*it;
  }
  if (!list->is_array()) throw ParseError(1, "expected an array of rules");

  const Inventory probe{{ServerRecord{}}, {}};
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto& item = (*list)[i];
    auto fail = [&](const std::string& what) -> ParseError {
      return ParseError(i + 1, what, "rule");
    };
    if (!item.is_object()) throw fail("expected an object");
    ClassificationRule rule;
    if (!item.contains("field") || !item["field"].is_string()) {
      throw fail("missing string 'field'");
    }
    rule.field = item["field"].get<std::string>();
    const auto op_name = item.value("operator", item.value("op", std::string()));
    auto op = operator_from_string(op_name);
    if (!op) throw fail("operator must be contains, eq, lt or gt");
    rule.op = *op;
    if (!item.contains("value")) throw fail("missing 'value'");
    const auto& value = item["value"];
    if (value.is_string()) {
      rule.value = value.get<std::string>();
    } else if (value.is_number()) {
      rule.value = value.get<double>();
    } else {
      throw fail("value must be a string or a number");
    }
    auto pool = item.contains("pool") && item["pool"].is_string()
                    ? pool_from_string(item["pool"].get<std::string>())
                    : std::nullopt;
    if (!pool) throw fail("pool must be innovation, production or mission_critical");
    rule.pool = *pool;
    // Evaluate once against a blank record so bad field names or operator
    // and type mismatches surface at load time.
    try {
      (void)rule_matches(probe.servers.front(), rule);
    } catch (const UsageError& e) {
      throw fail(e.what());
    }
    rules.rules.push_back(std::move(rule));
  }
  return rules;
}

Pool classify_pool(const ServerRecord& record,
                   const ClassificationRules& rules) {
  for (const auto& rule : rules.rules) {
    if (rule_matches(record, rule)) return rule.pool;
  }
  return rules.default_pool;
}

std::size_t PoolAssignment::total_count() const {
  return std::accumulate(stats.begin(), stats.end(), std::size_t{0},
                         [](std::size_t n, const PoolStats& s) {
                           return n + s.count;
                         });
}

double PoolAssignment::overall_mean_utilization() const {
  const std::size_t n = total_count();
  if (n == 0) return 0.0;
  double weighted = 0.0;
  for (const auto& s : stats) {
    weighted += s.mean_utilization * static_cast<double>(s.count);
  }
  return weighted / static_cast<double>(n);
}

std::optional<Pool> PoolAssignment::pool_of(std::string_view id) const {
  for (const auto& [member, pool] : members) {
    if (member == id) return pool;
  }
  return std::nullopt;
}

PoolAssignment partition(const Inventory& inventory,
                         const ClassificationRules& rules) {
  PoolAssignment out;
  out.members.reserve(inventory.servers.size());
  std::array<double, 3> sums{};
  for (const auto& r : inventory.servers) {
    const Pool pool = classify_pool(r, rules);
    out.members.emplace_back(r.id, pool);
    out.stats[index_of(pool)].count += 1;
    sums[index_of(pool)] += r.utilization;
  }
  for (std::size_t i = 0; i < sums.size(); ++i) {
    auto& s = out.stats[i];
    s.mean_utilization = s.count ? sums[i] / static_cast<double>(s.count) : 0.0;
  }
  return out;
}

ServerRole classify_role(const ServerRecord& record) {
  const auto tags = tags_of(record);
  if (any_tag_matches(tags, {"postgres", "mysql", "mariadb", "sql", "oracle",
                             "mongo", "redis", "db2", "database", "cassandra"})) {
    return ServerRole::Database;
  }
  if (any_tag_matches(tags, {"ldap", "active-directory", "kerberos",
                             "identity", "radius", "sso", "iam"})) {
    return ServerRole::IdentityManagement;
  }
  if (any_tag_matches(tags, {"dns", "dhcp", "router", "firewall", "proxy",
                             "vpn", "ntp"})) {
    return ServerRole::NetworkInfrastructure;
  }
  if (any_tag_matches(tags, {"terminal", "rdp", "citrix", "vdi"})) {
    return ServerRole::Terminal;
  }
  if (any_tag_matches(tags, {"fileserver", "file-server", "print", "smb",
                             "samba", "nfs", "cups", "ftp"})) {
    return ServerRole::FilePrint;
  }
  if (any_tag_matches(tags, {"exchange", "mail", "smtp", "sharepoint",
                             "chat", "wiki", "calendar", "collab"})) {
    return ServerRole::Collaboration;
  }
  if (any_tag_matches(tags, {"http", "nginx", "apache", "iis", "web",
                             "tomcat"})) {
    return ServerRole::Web;
  }
  return ServerRole::Application;
}

ApplicationCategory classify_application(
    std::string_view name,
    const std::map<std::string, ApplicationCategory, std::less<>>& overrides) {
  if (auto it = overrides.find(name); it != overrides.end()) return it->second;

  const auto tokens = tokens_of(name);
  auto has = [&](std::initializer_list<std::string_view> words) {
    return std::any_of(tokens.begin(), tokens.end(), [&](const std::string& t) {
      return std::find(words.begin(), words.end(), t) != words.end();
    });
  };
  using enum ApplicationCategory;
  if (has({"legacy", "mainframe", "cobol", "as400"})) return LegacyVsUpdated;
  if (has({"critical", "realtime", "trading"})) return MissionCritical;
  if (has({"custom", "bespoke", "homegrown"})) return Custom;
  if (has({"commercial", "cots", "vendor", "inhouse"})) return CommercialVsInHouse;
  if (has({"erp", "crm", "billing", "payroll", "sales", "orders",
           "inventory"})) {
    return LineOfBusiness;
  }
  if (has({"hr", "helpdesk", "reporting", "analytics", "office", "intranet"})) {
    return BusinessSupport;
  }
  return Infrastructure;
}

}  // namespace greenpack
