#include <doctest.h>

#include <vector>

#include "rankrev/logic.hpp"

using namespace rankrev;

namespace {

std::vector<Formula> all_formulas() {
  std::vector<Formula> out;
  for (int m = 0; m < 16; ++m) out.push_back(Formula(static_cast<std::uint8_t>(m)));
  return out;
}

}  // namespace

TEST_CASE("four distinct worlds with a fixed order") {
  auto ws = all_worlds();
  CHECK(ws.size() == 4);
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j)
      CHECK(ws[i] != ws[j]);
  CHECK(world_name(World::W0) == "w0");
  CHECK(world_name(World::WHalt) == "whalt");
  CHECK(world_name(World::WQ) == "wq");
  CHECK(world_name(World::WPos) == "wpos");
}

TEST_CASE("entails is model-set containment") {
  CHECK(entails(Formula{World::W0}, Formula{World::W0, World::WQ}));
  CHECK_FALSE(entails(Formula{World::W0, World::WQ}, Formula{World::W0}));
  for (Formula f : all_formulas()) CHECK(entails(Formula::none(), f));
}

TEST_CASE("complement") {
  CHECK(complement(Formula{World::W0, World::WPos}) ==
        Formula{World::WHalt, World::WQ});
  CHECK(complement(Formula::all()) == Formula::none());
  CHECK(complement(Formula::none()) == Formula::all());
  for (Formula f : all_formulas()) CHECK(complement(complement(f)) == f);
}

TEST_CASE("consistency is non-emptiness") {
  CHECK(is_consistent(Formula{World::WQ}));
  CHECK_FALSE(is_consistent(Formula::none()));
  CHECK(is_consistent(Formula::all()));
}

TEST_CASE("entailment is a partial order on the 16 formulas") {
  auto fs = all_formulas();
  CHECK(fs.size() == 16);
  for (Formula f : fs) CHECK(entails(f, f));
  for (Formula f : fs)
    for (Formula g : fs)
      if (entails(f, g) && entails(g, f)) CHECK(f == g);
  for (Formula f : fs)
    for (Formula g : fs)
      for (Formula h : fs)
        if (entails(f, g) && entails(g, h)) CHECK(entails(f, h));
}

TEST_CASE("formula text round-trips") {
  for (Formula f : all_formulas()) {
    auto back = parse_formula(f.to_string());
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK(parse_formula("{}") == Formula::none());
  CHECK(parse_formula("{w0,wpos}") == Formula(std::initializer_list<World>{World::W0, World::WPos}));
  CHECK(parse_formula("{ wq , whalt }") ==
        Formula(std::initializer_list<World>{World::WQ, World::WHalt}));
  CHECK_FALSE(parse_formula("w0").has_value());
  CHECK_FALSE(parse_formula("{w5}").has_value());
  CHECK_FALSE(parse_formula("{w0,w0}").has_value());
  CHECK_FALSE(parse_formula("{w0,}").has_value());
}
