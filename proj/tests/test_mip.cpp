#include <gtest/gtest.h>

#include <algorithm>
#include <stdexcept>

#include "sprrp/mip.hpp"
#include "support/paths.hpp"

namespace sprrp {
namespace {

std::size_t count_prefix(const MipModel& m, const std::string& prefix, VarKind kind) {
  return static_cast<std::size_t>(std::count_if(m.variables.begin(), m.variables.end(), [&](const MipVariable& v) {
    return v.name.rfind(prefix, 0) == 0 && v.kind == kind;
  }));
}

TEST(Linearize, FixtureEdgeBinaries) {
  const MipModel m = linearize(testing::fixture());
  EXPECT_EQ(count_prefix(m, "x_", VarKind::kBinary), 18u);
  EXPECT_EQ(m.objective.size(), 4u);
}

TEST(Linearize, FixtureCensusMatchesGolden) {
  const MipCensus c = census(linearize(testing::fixture()));
  EXPECT_EQ(census_json(c), testing::slurp(testing::source_dir() / "tests/data/fixture_census.json"));
}

TEST(Linearize, FixtureLpMatchesGolden) {
  EXPECT_EQ(write_lp(linearize(testing::fixture())),
            testing::slurp(testing::source_dir() / "tests/data/fixture.lp"));
}

TEST(Linearize, ZeroPois) {
  Instance inst;
  inst.fleet.battery_capacity = 1;
  inst.t_max = 1;
  const MipModel m = linearize(inst);
  EXPECT_EQ(count_prefix(m, "x_", VarKind::kBinary), 0u);
  EXPECT_TRUE(m.objective.empty());
  const std::string lp = write_lp(m);
  EXPECT_NE(lp.find("Maximize\n obj:\nSubject To\n"), std::string::npos);
}

TEST(Linearize, HorizonGuard) {
  Instance inst = testing::fixture();
  inst.t_max = 40;
  EXPECT_THROW(linearize(inst), std::length_error);
  EXPECT_NO_THROW(linearize(inst, LinearizeOptions{80}));
}

TEST(Linearize, OneVariablePerNameFamily) {
  Instance inst = testing::fixture();
  inst.fleet.vehicle_count = 2;
  inst.options.allow_charge_only_visit = false;
  const MipModel m = linearize(inst);
  const MipCensus c = census(m);
  // 2 vehicles x (3n + 1 return) timed points x (S - 1) binaries, S = 14.
  EXPECT_EQ(c.variables.at("z"), 2u * 7u * 13u);
  EXPECT_EQ(c.constraints.at("chgonly"), 4u);
  EXPECT_EQ(c.constraints.at("visit"), 6u);
  EXPECT_EQ(c.binaries + c.continuous, m.variables.size());
}

TEST(Linearize, OpenRoutesHaveNoEndPoint) {
  Instance inst = testing::fixture();
  inst.options.return_to_base = false;
  const MipModel m = linearize(inst);
  EXPECT_TRUE(std::none_of(m.variables.begin(), m.variables.end(),
                           [](const MipVariable& v) { return v.name == "t_k0_end"; }));
  EXPECT_EQ(count_prefix(m, "x_", VarKind::kBinary), 14u);
}

TEST(WriteLp, EmptyModel) {
  EXPECT_EQ(write_lp(MipModel{}), "Maximize\n obj:\nSubject To\nBounds\nBinaries\nEnd\n");
}

TEST(WriteLp, OneBinaryOneConstraint) {
  MipModel m;
  const int x = m.add_variable("x", VarKind::kBinary, 0, 1);
  m.objective.push_back({x, 1});
  m.add_constraint("c", {{x, 2}}, Relation::kLessEqual, 1);
  const std::string lp = write_lp(m);
  EXPECT_EQ(lp, "Maximize\n obj: 1 x\nSubject To\n c: 2 x <= 1\nBounds\nBinaries\n x\nEnd\n");
  EXPECT_EQ(std::count(lp.begin(), lp.end(), '\n'), 8);
}

TEST(WriteLp, BoundsAndSigns) {
  MipModel m;
  const int a = m.add_variable("a", VarKind::kContinuous, 0.5, 4);
  const int b = m.add_variable("b", VarKind::kContinuous, 2, 2);
  m.add_constraint("r", {{a, -1.5}, {b, 0.1}}, Relation::kGreaterEqual, -3);
  m.add_constraint("e", {{a, 1}}, Relation::kEqual, 0);
  const std::string lp = write_lp(m);
  EXPECT_NE(lp.find(" r: - 1.5 a + 0.1 b >= -3\n"), std::string::npos);
  EXPECT_NE(lp.find(" e: 1 a = 0\n"), std::string::npos);
  EXPECT_NE(lp.find(" 0.5 <= a <= 4\n"), std::string::npos);
  EXPECT_NE(lp.find(" b = 2\n"), std::string::npos);
}

TEST(WriteLp, RejectsBadNames) {
  MipModel m;
  m.add_variable("bad-name", VarKind::kBinary, 0, 1);
  EXPECT_THROW(write_lp(m), std::invalid_argument);
  MipModel dup;
  dup.add_variable("x", VarKind::kBinary, 0, 1);
  dup.add_variable("x", VarKind::kBinary, 0, 1);
  EXPECT_THROW(write_lp(dup), std::invalid_argument);
  MipModel longname;
  longname.add_variable(std::string(256, 'x'), VarKind::kBinary, 0, 1);
  EXPECT_THROW(write_lp(longname), std::invalid_argument);
  MipModel dangling;
  dangling.add_constraint("c", {{3, 1}}, Relation::kLessEqual, 0);
  EXPECT_THROW(write_lp(dangling), std::invalid_argument);
}

TEST(WriteLp, NamesAreDeterministicAndValid) {
  const MipModel m = linearize(testing::fixture());
  EXPECT_EQ(write_lp(m), write_lp(linearize(testing::fixture())));
  for (const auto& v : m.variables) EXPECT_LE(v.name.size(), 255u);
}

}  // namespace
}  // namespace sprrp
