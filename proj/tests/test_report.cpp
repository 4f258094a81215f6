#include "doctest.h"
#include "fixtures.hpp"
#include "greenpack/errors.hpp"
#include "greenpack/number_format.hpp"
#include "greenpack/report.hpp"

using namespace greenpack;
using testing::make_server;

namespace {

struct Pipeline {
  Inventory inventory;
  PoolAssignment assignment;
  ConsolidationPlan plan;
  EnergyReport report;
};

Pipeline run(Inventory inv, ConsolidationRatios ratios = {},
             PlanMode mode = PlanMode::FixedRatio, ReportOptions options = {},
             const PowerCurve& curve = paper_power_curve()) {
  Pipeline p;
  p.inventory = std::move(inv);
  p.assignment = partition(p.inventory, default_rules());
  std::vector<NormalizedWorkload> w;
  for (const auto& s : p.inventory.servers) w.push_back(normalized_workload(s));
  p.plan = plan(p.assignment, w, ratios, {}, curve, mode);
  p.report = build_report(p.inventory, p.assignment, p.plan, curve, options);
  return p;
}

}  // namespace

TEST_CASE("table one and two reproduction") {
  const auto r = run(testing::table1_inventory()).report;
  CHECK(r.pools[0].pre_watts == 43250.0);
  CHECK(r.pools[1].pre_watts == 30275.0);
  CHECK(r.pools[2].pre_watts == 12975.0);
  CHECK(r.total.pre_watts == 86500.0);
  CHECK(r.pools[0].post_watts == 3910.0);
  CHECK(r.pools[1].post_watts == 4140.0);
  CHECK(r.pools[2].post_watts == 3450.0);
  CHECK(r.total.post_watts == 11500.0);
  CHECK(r.pools[0].saving_watts == 39340.0);
  CHECK(r.pools[1].saving_watts == 26135.0);
  CHECK(r.pools[2].saving_watts == 9525.0);
  CHECK(r.total.saving_watts == 75000.0);
  CHECK(r.total.ratio == 10.0);
  CHECK(r.total.pre_count == 500);
  CHECK(r.total.post_host_count == 50);
  CHECK(r.total.post_utilization_stated == 0.5);
  CHECK(r.annual_kwh_saved == 657000.0);
  CHECK(r.co2_kg_saved == 328500.0);
  CHECK(r.dead_server_ids.empty());
  CHECK(r.mode == PlanMode::FixedRatio);
  CHECK(r.energy_model == EnergyModel::Paper);
}

TEST_CASE("identity plan saves nothing") {
  const PowerCurve flat("flat-173", {{0.05, 173.0}});
  const auto r =
      run(testing::table1_inventory(), {1, 1, 1}, PlanMode::FixedRatio, {}, flat).report;
  for (const auto& p : r.pools) CHECK(p.saving_watts == 0.0);
  CHECK(r.total.saving_watts == 0.0);
  CHECK(r.total.saving_percent == 0.0);
  CHECK(r.annual_kwh_saved == 0.0);
}

TEST_CASE("ten servers onto one host") {
  Inventory inv;
  for (int i = 0; i < 10; ++i) {
    auto s = make_server("s" + std::to_string(i), 0.05);
    s.services = {"sla"};
    inv.servers.push_back(s);
  }
  const auto r = run(inv).report;
  const auto& prod = r.pools[index_of(Pool::Production)];
  CHECK(prod.pre_watts == 1730.0);
  CHECK(prod.post_watts == 230.0);
  CHECK(prod.saving_watts == 1500.0);
  CHECK(prod.saving_percent == doctest::Approx(1500.0 / 1730.0 * 100.0));
  CHECK(format_fixed(prod.saving_percent, 1) == "86.7");
}

TEST_CASE("curve energy model charges each server its own draw") {
  Inventory inv{{make_server("a", 0.5), make_server("b", 1.0)}, {}};
  ReportOptions o;
  o.energy_model = EnergyModel::Curve;
  const auto r = run(inv, {}, PlanMode::FixedRatio, o).report;
  CHECK(r.total.pre_watts == 505.0);
  CHECK(r.total.post_watts == 230.0);
  CHECK(r.energy_model == EnergyModel::Curve);
}

TEST_CASE("negative savings keep their sign") {
  Inventory inv{{make_server("a", 0.05)}, {}};
  const PowerCurve steep("steep", {{0.05, 100.0}, {0.5, 400.0}});
  const auto r = run(inv, {}, PlanMode::FixedRatio, {}, steep).report;
  CHECK(r.total.saving_watts == -300.0);
  CHECK(r.annual_kwh_saved == doctest::Approx(-300.0 * 8.76));
  CHECK(r.co2_kg_saved < 0.0);
}

TEST_CASE("dead servers appear in the report") {
  Inventory inv{{make_server("a", 0.001), make_server("b", 0.2)}, {}};
  CHECK(run(inv).report.dead_server_ids == std::vector<std::string>{"a"});
}

TEST_CASE("text render mirrors the two tables") {
  const auto r = run(testing::table1_inventory()).report;
  const auto text = render(r, OutputFormat::Text);
  for (const char* cell : {"43250", "30275", "12975", "86500", "3910", "4140",
                           "3450", "11500", "39340", "26135", "9525", "75000",
                           "15:1", "10:1", "5:1", "50.0%", "5.1% (~5%)",
                           "Mission Critical", "657000.0 kWh"}) {
    CHECK_MESSAGE(text.find(cell) != std::string::npos, cell);
  }
  CHECK(render(r, OutputFormat::Text) == text);
}

TEST_CASE("json and csv renders parse back losslessly") {
  Inventory inv = testing::table1_inventory();
  inv.servers.push_back(make_server("idle, \"odd\" id", 0.0001));
  const auto r = run(inv).report;
  for (auto fmt : {OutputFormat::Json, OutputFormat::Csv}) {
    const auto doc = render(r, fmt);
    const auto back = parse_report(doc, fmt);
    CHECK(back == r);
    CHECK(render(back, fmt) == doc);
  }
  CHECK_THROWS_AS((void)parse_report("x", OutputFormat::Text), UsageError);
  CHECK_THROWS_AS((void)parse_report("{}", OutputFormat::Json), ParseError);
  CHECK_THROWS_AS((void)parse_report("a,b\n", OutputFormat::Csv), ParseError);
}

TEST_CASE("empty inventory report") {
  const auto r = run(Inventory{}).report;
  const auto doc = render(r, OutputFormat::Json);
  const auto back = parse_report(doc, OutputFormat::Json);
  for (const auto& p : back.pools) {
    CHECK(p.pre_count == 0);
    CHECK(p.pre_watts == 0.0);
    CHECK(p.post_watts == 0.0);
    CHECK(p.saving_watts == 0.0);
  }
  CHECK(back.total.post_host_count == 0);
  CHECK(back.total.saving_percent == 0.0);
}

TEST_CASE("assignment and plan renders") {
  const auto p = run(testing::table1_inventory(), {}, PlanMode::Packed);
  const auto json = render_assignment(p.inventory, p.assignment, OutputFormat::Json);
  CHECK(json.find("\"mission_critical\"") != std::string::npos);
  const auto csv = render_assignment(p.inventory, p.assignment, OutputFormat::Csv);
  CHECK(csv.rfind("id,pool,role\n", 0) == 0);
  CHECK(render_assignment(p.inventory, p.assignment, OutputFormat::Text)
            .find("Innovation") != std::string::npos);

  const auto plan_text = render_plan(p.plan, OutputFormat::Text);
  CHECK(plan_text.find("Mode: packed") != std::string::npos);
  CHECK(render_plan(p.plan, OutputFormat::Json).find("\"guests\"") != std::string::npos);
  CHECK(render_plan(p.plan, OutputFormat::Csv).rfind("pool,host,", 0) == 0);
}
