#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "homcheck/io.hpp"
#include "homcheck/randgen.hpp"

namespace homcheck {
namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalInconsistency;
}

TEST(Io, AlgebraRoundTrip) {
  const Algebra a({2, 3});
  EXPECT_EQ(algebra_from_json(to_json(a)), a);
  const Algebra t = Algebra::tensor(Algebra({2}), Algebra({1, 3}));
  const Algebra back = algebra_from_json(parse_json(dump(to_json(t))));
  ASSERT_TRUE(back.is_tensor());
  EXPECT_EQ(back.right_factor(), Algebra({1, 3}));
}

TEST(Io, ElementRoundTripIsExact) {
  Rng rng(Seed{3});
  const Element x = random_element(Algebra({2, 1}), rng);
  const Element y = element_from_json(parse_json(dump(to_json(x))));
  EXPECT_EQ(distance(x, y), 0.0);
}

TEST(Io, ElementLayoutIsRowMajor) {
  const Json j = parse_json(R"({"algebra":{"blocks":[2]},
    "blocks":[[[1,0],[2,0.5],[3,0],[4,0]]]})");
  const Element x = element_from_json(j);
  EXPECT_EQ(x.block(0)(0, 1), Complex(2, 0.5));
  EXPECT_EQ(x.block(0)(1, 0), Complex(3, 0));
}

TEST(Io, MapAndStateRoundTrip) {
  const LinMap phi = random_ucp(Algebra({1, 2}), Algebra({3}), {1, 2}, Seed{2});
  const LinMap back = linmap_from_json(parse_json(dump(to_json(phi))));
  EXPECT_EQ((back.matrix() - phi.matrix()).norm(), 0.0);
  const State mu = random_state(Algebra({2, 2}), Seed{1});
  EXPECT_EQ(distance(state_from_json(parse_json(dump(to_json(mu)))).density(), mu.density()), 0.0);
}

TEST(Io, ParseErrors) {
  EXPECT_EQ(kind_of([] { parse_json("{\"blocks\": [1,"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { algebra_from_json(parse_json(R"({"blocks":"two"})")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { algebra_from_json(parse_json(R"({"blocks":[2,0]})")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { algebra_from_json(parse_json(R"({"blocks":[1.5]})")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { algebra_from_json(parse_json(R"({"blocks":[]})")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { algebra_from_json(parse_json(R"([2])")); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              algebra_from_json(parse_json(R"({"blocks":[2],"factors":[{"blocks":[1]},{"blocks":[3]}]})"));
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              element_from_json(parse_json(R"({"algebra":{"blocks":[2]},"blocks":[[[1,0]]]})"));
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              element_from_json(parse_json(R"({"algebra":{"blocks":[1]},"blocks":[[[1,"x"]]]})"));
            }),
            ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { read_json_file("/nonexistent/map.json"); }), ErrorKind::ParseError);
}

TEST(Io, MapImagesMustMatch) {
  Json j = to_json(testing::depolarizing(2));
  j["images"].erase(0);
  EXPECT_EQ(kind_of([&] { linmap_from_json(j); }), ErrorKind::ParseError);
  Json k = to_json(testing::depolarizing(2));
  k["codomain"]["blocks"] = Json::array({1, 1, 1, 1});
  EXPECT_EQ(kind_of([&] { linmap_from_json(k); }), ErrorKind::ParseError);
}

TEST(Io, NumberFormatting) {
  Json j;
  j["x"] = 0.1;
  j["zero"] = 0.0;
  j["n"] = 3;
  j["list"] = Json::array({1.0, -2.5});
  EXPECT_EQ(dump(j),
            "{\n"
            "  \"x\": 1.0000000000000001e-01,\n"
            "  \"zero\": 0.0000000000000000e+00,\n"
            "  \"n\": 3,\n"
            "  \"list\": [1.0000000000000000e+00, -2.5000000000000000e+00]\n"
            "}\n");
}

TEST(Io, DefectFormatting) {
  EXPECT_EQ(format_defect(0.375), "0.375000000000");
  EXPECT_EQ(format_defect(-1e-15), "0.000000000000");
  EXPECT_EQ(format_defect(1e-13), "0.000000000000");
  EXPECT_EQ(format_defect(-0.5), "-0.500000000000");
}

}  // namespace
}  // namespace homcheck
