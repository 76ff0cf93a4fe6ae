#include <gtest/gtest.h>

#include "corruptions.hpp"
#include "deltareal/json_io.hpp"

using namespace deltareal;
using namespace deltareal::io;

TEST(MonoidFile, CanonicalBaseFile) {
  MonoidFile f{realization::base_monoid(3), std::nullopt};
  EXPECT_EQ(save_string(f),
            "{\n"
            "  \"atoms\": [\n"
            "    [5,0],\n"
            "    [0,5],\n"
            "    [1,1]\n"
            "  ],\n"
            "  \"labels\": [\"v1\",\"v2\",\"v3\"],\n"
            "  \"rank\": 2\n"
            "}\n");
}

TEST(MonoidFile, RoundTripsConstructedMonoids) {
  std::vector<MonoidFile> files;
  files.push_back(monoid_file(realization::realize({1, 2})));
  files.push_back(monoid_file(realization::realize({2, 4})));
  files.push_back(monoid_file(realization::realize({5})));
  std::vector<Int> support{1, 2};
  files.push_back({zerosum::block_monoid(zerosum::CyclicGroup(4), support), std::nullopt});
  for (const auto& f : files) {
    const std::string text = save_string(f);
    MonoidFile back = load_string(text);
    EXPECT_EQ(back.monoid, f.monoid);
    EXPECT_EQ(back.meta, f.meta);
    EXPECT_EQ(save_string(back), text);
    EXPECT_EQ(text.find('\r'), std::string::npos);
  }
}

TEST(MonoidFile, GadgetFields) {
  auto r = realization::realize({1, 2});
  json j = to_json(monoid_file(r));
  const auto& g = j.at("gadgets").at(0);
  EXPECT_EQ(g.at("ell"), 4);
  EXPECT_EQ(g.at("fresh_coords"), json({4, 7}));
  EXPECT_EQ(g.at("p1_index"), 6);
  EXPECT_EQ(j.at("meta").at("delta_target"), json({1, 2}));
  EXPECT_EQ(j.at("meta").at("tool_version"), kToolVersion);
}

TEST(MonoidFile, RejectsMalformedInput) {
  EXPECT_THROW(load_string("not json"), FormatError);
  EXPECT_THROW(load_string("[]"), FormatError);
  EXPECT_THROW(load_string(R"({"atoms": [[1]]})"), FormatError);
  EXPECT_THROW(load_string(R"({"rank": 2, "atoms": [[1, "x"]]})"), FormatError);
  EXPECT_THROW(load_string(R"({"rank": 2, "atoms": [[1]]})"), DimensionError);
  EXPECT_THROW(load_string(R"({"rank": 2, "atoms": [[1, 0]], "labels": ["a", "b"]})"), FormatError);
  auto r = realization::realize({1, 2});
  json j = to_json(monoid_file(r));
  json badSpan = j;
  badSpan["gadgets"][0]["fresh_coords"] = {4, 6};
  EXPECT_THROW(monoid_file_from_json(badSpan), FormatError);
  json badP1 = j;
  badP1["atoms"][6][0] = 7;
  EXPECT_THROW(monoid_file_from_json(badP1), PreconditionError);
}

TEST(Report, JsonIsReproducibleAndCarriesCounterexamples) {
  auto r = realization::realize({1, 2});
  auto cfg = corrupt::control_config();
  const std::string a = canonical_dump(to_json(verification::full_report(r, cfg), r));
  const std::string b = canonical_dump(to_json(verification::full_report(r, cfg), r));
  EXPECT_EQ(a, b);
  json j = json::parse(a);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(j.at("computed_delta"), json({1, 2}));
  EXPECT_EQ(j.at("checks").size(), 7u);
  EXPECT_FALSE(j.contains("seconds"));

  auto broken = corrupt::add_square_of_v3(r);
  json bad = to_json(verification::full_report(broken, cfg), broken);
  EXPECT_FALSE(bad.at("passed").get<bool>());
  for (const auto& c : bad.at("checks"))
    if (c.at("status") == "fail") EXPECT_TRUE(c.contains("counterexample")) << c.at("name");
}
