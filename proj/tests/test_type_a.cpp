#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kh/fixtures.hpp"
#include "kh/type_a.hpp"
#include "tangle_gen.hpp"

using namespace kh;
using K = MorseEvent::Kind;

namespace {

PlanarMatching P() { return PlanarMatching::from_pairs(2, {{1, 2}, {3, 4}}); }
PlanarMatching N() { return PlanarMatching::from_pairs(2, {{1, 4}, {2, 3}}); }

// xi_1 .. xi_6 of the Hopf left tangle; xi_k has the boundary of the right xi_k
std::vector<int> hopf_states(const TypeAStructure& a) {
  return {a.find({P(), 0, {1, -1}}), a.find({P(), 0, {-1, -1}}), a.find({P(), 1, {-1}}),
          a.find({N(), 1, {-1, 1}}), a.find({N(), 1, {-1, -1}}), a.find({N(), 0, {-1}})};
}

// Action of the unique generator of kind k from the state's boundary.
StateVec act_kind(const TypeAStructure& a, int i, GenKind k) {
  int found = 0;
  StateVec out;
  for (auto& [g, v] : a.act[i])
    if (a.alg().gen(g).kind == k) {
      ++found;
      out = v;
    }
  REQUIRE(found == 1);
  return out;
}

}  // namespace

TEST_CASE("state counts") {
  CHECK(build_states_a(fixture("hopf_left")).size() == 6);
  CHECK(build_states_a(build_diagram(Side::Left, 1, {{K::Cap, 1}}, {})).size() == 1);
  std::mt19937_64 rng(3);
  for (int it = 0; it < 10; ++it) {
    auto t = testing::random_tangle(rng, Side::Right, 2, 2);
    CHECK(build_states_a(mirror(t)).size() == build_states(t).size());
  }
  CHECK_THROWS_AS(build_type_a(fixture("hopf_right")), Error);
}

TEST_CASE("hopf type A structure") {
  auto a = build_type_a(fixture("hopf_left"));
  auto x = hopf_states(a);
  for (int i : x) REQUIRE(i >= 0);
  for (auto& m : a.m1) CHECK(m.empty());
  RF one = RF::one();
  auto v = [&](int k, const RF& c) { return StateVec{{x[k], c}}; };
  using G = GenKind;
  CHECK(act_kind(a, x[0], G::LeftBridge) == v(2, one));
  CHECK(act_kind(a, x[0], G::RightBridge) == v(5, one));
  CHECK(act_kind(a, x[0], G::RightDec) == v(1, one));
  CHECK(act_kind(a, x[0], G::LeftDec) == v(1, parse_rf("x7 + x8", a.vars)));
  CHECK(act_kind(a, x[2], G::RightBridge) == v(4, one));
  CHECK(act_kind(a, x[2], G::LeftBridge).empty());
  CHECK(act_kind(a, x[3], G::RightBridge) == v(2, one));
  CHECK(act_kind(a, x[3], G::RightDec) == v(4, one));
  CHECK(act_kind(a, x[3], G::LeftDec) == v(4, parse_rf("x6 + x7", a.vars)));
  CHECK(act_kind(a, x[3], G::LeftBridge).empty());
  CHECK(act_kind(a, x[5], G::RightBridge) == v(1, one));
  CHECK(act_kind(a, x[5], G::LeftBridge) == v(4, one));
  CHECK(a.act[x[1]].empty());
  CHECK(a.act[x[4]].empty());
  std::vector<std::string> zeta = {"-1/4", "1/4", "1/2", "1/4", "3/4", "0"};
  for (int k = 0; k < 6; ++k) CHECK(zeta_string(a.zeta4[x[k]]) == zeta[k]);
}

TEST_CASE("act on mismatched idempotent and words") {
  auto a = build_type_a(fixture("hopf_left"));
  auto x = hopf_states(a);
  Algebra& A = a.alg();
  // a generator from xi_1's boundary does nothing to xi_4
  GenId g = a.act[x[0]].begin()->first;
  CHECK(act_generator(a, x[3], g).empty());
  CHECK(act_word(a, x[3], Word{g}, a.boundary[x[0]]).empty());
  CHECK(act_word(a, x[0], Word{}, a.boundary[x[0]]) == StateVec{{x[0], RF::one()}});
  CHECK(act_word(a, x[0], Word{}, a.boundary[x[3]]).empty());
  CHECK_THROWS_AS(act_word(a, x[0], Word{g, g, g}, a.boundary[x[0]]), Error);
  CHECK(act(a, StateVec{{x[0], RF::one()}}, A.idempotent(a.boundary[x[0]])) == StateVec{{x[0], RF::one()}});
}

TEST_CASE("free circle state: m1 is the vertical term") {
  // kink with over=neg: the 1-smoothing closes a free loop
  auto t = build_diagram(Side::Left, 1, {{K::Cup, 2}, {K::Cross, 1, 0}, {K::Cap, 2}, {K::Cap, 1}}, {{"k", -1, false}});
  auto a = build_type_a(t);
  auto m = enumerate_matchings(1)[0];
  auto r1 = resolve_tangle(t, 1);
  REQUIRE(r1.free.size() == 1);
  int i = a.find({m, 1, {-1, 1}});
  int j = a.find({m, 1, {-1, -1}});
  REQUIRE(i >= 0);
  REQUIRE(j >= 0);
  auto cs = resolve(t, r1, m);
  CHECK(a.m1[i] == StateVec{{j, RF(cs.circles[1].weight)}});
}

TEST_CASE("A-infinity relations on fixtures") {
  for (auto name : {"hopf_right", "hopf_right_r2", "unknot0", "unknot1p", "unknot1n", "unknot2"}) {
    CAPTURE(name);
    auto a = build_type_a(mirror(fixture(name)));
    auto r = verify_Ainf(a);
    CHECK_MESSAGE(r.ok, (r.failures.empty() ? "" : r.failures[0]));
    CHECK(verify_grading(a).ok);
  }
  auto h = build_type_a(fixture("hopf_left"));
  CHECK(verify_Ainf(h).ok);
  CHECK(verify_grading(h).ok);
}

TEST_CASE("A-infinity relations on generated tangles") {
  std::mt19937_64 rng(99);
  struct Shape {
    int n, k, count;
  };
  for (Shape sh : {Shape{1, 1, 10}, Shape{1, 2, 20}, Shape{2, 1, 20}, Shape{2, 2, 40}, Shape{2, 3, 15}, Shape{3, 1, 8},
                   Shape{3, 2, 8}}) {
    for (int it = 0; it < sh.count; ++it) {
      auto t = mirror(testing::random_tangle(rng, Side::Right, sh.n, sh.k));
      CAPTURE(to_json(t).dump());
      auto a = build_type_a(t);
      auto r = verify_Ainf(a);
      CHECK_MESSAGE(r.ok, (r.failures.empty() ? "" : r.failures[0]));
      CHECK(verify_grading(a).ok);
    }
  }
}

TEST_CASE("corrupted action fails") {
  // drop one term of a left decoration action
  std::mt19937_64 rng(17);
  int tried = 0, caught = 0;
  for (int it = 0; it < 30 && caught < 5; ++it) {
    auto a = build_type_a(mirror(testing::random_tangle(rng, Side::Right, 2, 2)));
    REQUIRE(verify_Ainf(a).ok);
    for (int i = 0; i < static_cast<int>(a.states.size()); ++i)
      for (auto& [g, v] : a.act[i]) {
        if (a.alg().gen(g).kind != GenKind::LeftDec || v.empty()) continue;
        ++tried;
        auto b = a;
        b.act[i][g].erase(b.act[i][g].begin());
        auto r = verify_Ainf(b);
        if (r.ok) continue;
        ++caught;
        bool named = false;
        for (auto& f : r.failures) named |= f.find("left-dec") != std::string::npos;
        CHECK(named);
      }
  }
  CHECK(tried > 0);
  CHECK(caught > 0);
}

TEST_CASE("json dump") {
  auto a = build_type_a(fixture("hopf_left"));
  auto j = to_json(a);
  CHECK(j["states"].size() == 6);
  for (auto& s : j["states"]) CHECK(s["m1"].empty());
}
