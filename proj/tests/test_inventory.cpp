#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "greenpack/errors.hpp"
#include "greenpack/inventory.hpp"

using namespace greenpack;

namespace {

const std::string kHeader =
    "id,make_model,sockets,cores_per_socket,threads_per_core,cache_mb,"
    "memory_gb,memory_speed_mhz,network_ports,port_speed_gbps,disk_count,"
    "disk_capacity_gb,raid_level,os_name,patch_level,applications,services,"
    "utilization,status,peak_efficiency\n";

std::string row(const std::string& id, const std::string& util) {
  return id + ",DellR740,2,4,2,25,64,2933,4,10,2,960,1,linux,p1,\"db\",\"sqld\"," +
         util + ",active,1.0\n";
}

}  // namespace

TEST_CASE("csv row maps directly onto a record") {
  const auto inv = parse_inventory(kHeader + row("s1", "0.03"), InventoryFormat::Csv);
  REQUIRE(inv.servers.size() == 1);
  const auto& r = inv.servers[0];
  CHECK(r.id == "s1");
  CHECK(r.make_model == "DellR740");
  CHECK(r.sockets == 2);
  CHECK(r.cores_per_socket == 4);
  CHECK(r.threads_per_core == 2);
  CHECK(r.cache_mb == 25.0);
  CHECK(r.memory_gb == 64.0);
  CHECK(r.memory_speed_mhz == 2933.0);
  CHECK(r.network_ports == 4);
  CHECK(r.port_speed_gbps == 10.0);
  CHECK(r.disk_count == 2);
  CHECK(r.disk_capacity_gb == 960.0);
  CHECK(r.raid_level == RaidLevel::Raid1);
  CHECK(r.os_name == "linux");
  CHECK(r.patch_level == "p1");
  CHECK(r.applications == std::vector<std::string>{"db"});
  CHECK(r.services == std::vector<std::string>{"sqld"});
  CHECK(r.utilization == 0.03);
  CHECK(r.status == ServerStatus::Active);
  CHECK(r.peak_efficiency == 1.0);
}

TEST_CASE("header-only document is an empty inventory") {
  CHECK(parse_inventory(kHeader, InventoryFormat::Csv).servers.empty());
  CHECK(parse_inventory("[]", InventoryFormat::Json).servers.empty());
}

TEST_CASE("table one sized inventory partitions by utilization") {
  std::string text = kHeader;
  for (int i = 0; i < 250; ++i) text += row("i" + std::to_string(i), "0.03");
  for (int i = 0; i < 175; ++i) text += row("p" + std::to_string(i), "0.06");
  for (int i = 0; i < 75; ++i) text += row("m" + std::to_string(i), "0.10");
  const auto inv = parse_inventory(text, InventoryFormat::Csv);
  REQUIRE(inv.servers.size() == 500);
  int n3 = 0, n6 = 0, n10 = 0;
  for (const auto& s : inv.servers) {
    n3 += s.utilization == 0.03;
    n6 += s.utilization == 0.06;
    n10 += s.utilization == 0.10;
  }
  CHECK(n3 == 250);
  CHECK(n6 == 175);
  CHECK(n10 == 75);
  CHECK(inv.servers.front().id == "i0");
  CHECK(inv.servers.back().id == "m74");
}

TEST_CASE("lists, quoting and optional columns") {
  const std::string text =
      kHeader +
      "s1,\"Dell, Inc. \"\"R740\"\"\",1,1,1,0,0,0,0,0,0,0,,win,sp2,"
      "\"iis;sharepoint\",\"\",0.2,idle,\n"
      "s2,x,1,1,1,0,0,0,0,0,0,0,none,win,sp2,,,0.2,active,2.5\r\n";
  const auto inv = parse_inventory(text, InventoryFormat::Csv);
  REQUIRE(inv.servers.size() == 2);
  CHECK(inv.servers[0].make_model == "Dell, Inc. \"R740\"");
  CHECK_FALSE(inv.servers[0].raid_level.has_value());
  CHECK(inv.servers[0].applications ==
        std::vector<std::string>{"iis", "sharepoint"});
  CHECK(inv.servers[0].services.empty());
  CHECK(inv.servers[0].status == ServerStatus::Idle);
  CHECK(inv.servers[0].peak_efficiency == 1.0);
  CHECK(inv.servers[1].raid_level == RaidLevel::None);
  CHECK(inv.servers[1].peak_efficiency == 2.5);
}

TEST_CASE("syntax errors carry the line number") {
  SUBCASE("wrong field count") {
    try {
      (void)parse_inventory(kHeader + row("s1", "0.1") + "s2,short\n",
                            InventoryFormat::Csv);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.locus() == 3);
    }
  }
  SUBCASE("bad header") {
    CHECK_THROWS_AS((void)parse_inventory("id,name\n", InventoryFormat::Csv),
                    ParseError);
    CHECK_THROWS_AS((void)parse_inventory("", InventoryFormat::Csv), ParseError);
  }
  SUBCASE("non-numeric field") {
    auto text = kHeader + row("s1", "abc");
    CHECK_THROWS_AS((void)parse_inventory(text, InventoryFormat::Csv), ParseError);
  }
  SUBCASE("unterminated quote") {
    auto text = kHeader + "s1,\"open\n";
    CHECK_THROWS_AS((void)parse_inventory(text, InventoryFormat::Csv), ParseError);
  }
  SUBCASE("unknown status") {
    std::string text = kHeader + row("s1", "0.1");
    text.replace(text.find("active"), 6, "asleep");
    CHECK_THROWS_AS((void)parse_inventory(text, InventoryFormat::Csv), ParseError);
  }
  SUBCASE("malformed json names its line") {
    try {
      (void)parse_inventory("[\n{\"id\": }\n]", InventoryFormat::Json);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.locus() == 2);
    }
  }
}

TEST_CASE("invariant violations are rejected with field and id") {
  try {
    (void)parse_inventory(kHeader + row("s7", "1.3"), InventoryFormat::Csv);
    FAIL("expected ValidationError");
  } catch (const DuplicateIdError&) {
    FAIL("wrong error type");
  } catch (const ValidationError& e) {
    CHECK(e.record_id() == "s7");
    CHECK(e.field() == "utilization");
  }
  CHECK_THROWS_AS(
      (void)parse_inventory(kHeader + row("s1", "0.1") + row("s1", "0.2"),
                            InventoryFormat::Csv),
      DuplicateIdError);
}

TEST_CASE("json inventory uses the csv keys") {
  const std::string text = R"([
    {"id": "a", "make_model": "HP DL380", "sockets": 2, "cores_per_socket": 8,
     "threads_per_core": 2, "cache_mb": 20, "memory_gb": 128,
     "memory_speed_mhz": 2666, "network_ports": 2, "port_speed_gbps": 25,
     "disk_count": 4, "disk_capacity_gb": 1920, "raid_level": "10",
     "os_name": "rhel", "patch_level": "8.6",
     "applications": ["postgres"], "services": "ssh;ntp",
     "utilization": 0.12, "status": "active"}
  ])";
  const auto inv = parse_inventory(text, InventoryFormat::Json);
  REQUIRE(inv.servers.size() == 1);
  const auto& r = inv.servers[0];
  CHECK(r.cores_per_socket == 8);
  CHECK(r.raid_level == RaidLevel::Raid10);
  CHECK(r.services == std::vector<std::string>{"ssh", "ntp"});
  CHECK(r.peak_efficiency == 1.0);

  try {
    (void)parse_inventory(R"([{"id": "a"}])", InventoryFormat::Json);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.locus() == 1);
  }
}

TEST_CASE("validate reports every violation") {
  using testing::make_server;
  Inventory ok{{make_server("s1", 0.5)}, {}};
  CHECK(validate(ok).empty());

  Inventory dup{{make_server("s1", 0.1), make_server("s1", 0.2)}, {}};
  const auto v = validate(dup);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == Violation{"s1", "id", "unique id"});

  Inventory bad{{make_server("s2", 0.1, 0)}, {}};
  const auto b = validate(bad);
  REQUIRE(b.size() == 1);
  CHECK(b[0].field == "sockets");
  CHECK(b[0].rule == "sockets >= 1");

  auto r = make_server("s3", -0.1);
  r.peak_efficiency = 0.0;
  r.disk_count = -1;
  CHECK(validate(Inventory{{r}, {}}).size() == 3);
}

TEST_CASE("validate syntax-only read keeps bad records for reporting") {
  const auto inv = read_inventory(kHeader + row("s1", "1.3"), InventoryFormat::Csv);
  REQUIRE(validate(inv).size() == 1);
}

TEST_CASE("dead servers use a strict threshold") {
  using testing::make_server;
  Inventory two{{make_server("s1", 0.004), make_server("s2", 0.03)}, {}};
  CHECK(identify_dead(two, 0.005) == std::vector<std::string>{"s1"});
  CHECK(identify_dead(two).size() == 1);
  CHECK(identify_dead(two, 0.0).empty());

  Inventory edge{{make_server("s1", 0.004), make_server("s2", 0.0049),
                  make_server("s3", 0.005)},
                 {}};
  CHECK(identify_dead(edge, 0.005) == std::vector<std::string>{"s1", "s2"});

  CHECK_THROWS_AS((void)identify_dead(two, 1.5), DomainError);
  CHECK_THROWS_AS((void)identify_dead(two, -0.1), DomainError);
}
