#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kh/fixtures.hpp"
#include "kh/type_d.hpp"
#include "tangle_gen.hpp"

using namespace kh;
using K = MorseEvent::Kind;

namespace {

PlanarMatching P() { return PlanarMatching::from_pairs(2, {{1, 2}, {3, 4}}); }
PlanarMatching N() { return PlanarMatching::from_pairs(2, {{1, 4}, {2, 3}}); }

// xi_1 .. xi_6 of the Hopf right tangle
std::vector<int> hopf_states(const TypeDStructure& d) {
  return {d.find({P(), 0, {1, -1}}), d.find({P(), 0, {-1, -1}}), d.find({N(), 0, {-1}}),
          d.find({N(), 1, {-1, 1}}), d.find({N(), 1, {-1, -1}}), d.find({P(), 1, {-1}})};
}

RF poly(const TypeDStructure& d, const std::string& s) { return parse_rf(s, d.vars); }

// Coefficient of the term i -> j as a map kind -> field coefficient.
std::map<GenKind, RF> term(const TypeDStructure& d, int i, int j) {
  std::map<GenKind, RF> out;
  auto it = d.delta[i].find(j);
  if (it == d.delta[i].end()) return out;
  for (auto& [w, c] : it->second.terms) {
    REQUIRE(w.size() <= 1);
    GenKind k = w.empty() ? GenKind::Idempotent : d.alg().gen(w[0]).kind;
    REQUIRE(!out.count(k));
    out[k] = c;
  }
  return out;
}

std::size_t brute_count(const TangleDiagram& t) {
  std::size_t n = 0;
  for (auto& m : enumerate_matchings(t.n))
    for (ResolutionMask rho = 0; rho < (ResolutionMask{1} << t.num_crossings()); ++rho) {
      auto cs = resolve(t, resolve_tangle(t, rho), m);
      n += std::size_t{1} << (cs.circles.size() - 1);
    }
  return n;
}

}  // namespace

TEST_CASE("state counts") {
  auto h = fixture("hopf_right");
  CHECK(build_states(h).size() == 6);
  CHECK(build_states(build_diagram(Side::Right, 1, {{K::Cap, 1}}, {})).size() == 1);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    auto t = testing::random_tangle(rng, Side::Right, 2, 2);
    CHECK(build_states(t).size() == brute_count(t));
  }
  CHECK_THROWS_AS(build_states(h, 5), Error);
  CHECK_THROWS_AS(build_states(fixture("hopf_left")), Error);
}

TEST_CASE("hopf type D structure") {
  auto d = build_delta(fixture("hopf_right"));
  auto x = hopf_states(d);
  for (int i : x) REQUIRE(i >= 0);
  const RF one = RF::one();
  using G = GenKind;
  CHECK(term(d, x[0], x[2]) == std::map<G, RF>{{G::LeftBridge, one}});
  CHECK(term(d, x[0], x[5]) == std::map<G, RF>{{G::RightBridge, one}});
  CHECK(term(d, x[0], x[1]) == std::map<G, RF>{{G::LeftDec, one}, {G::RightDec, poly(d, "x3 + x4")}});
  CHECK(term(d, x[2], x[4]) == std::map<G, RF>{{G::RightBridge, one}});
  CHECK(term(d, x[2], x[1]) == std::map<G, RF>{{G::LeftBridge, one}});
  CHECK(term(d, x[3], x[5]) == std::map<G, RF>{{G::LeftBridge, one}});
  CHECK(term(d, x[3], x[4]) == std::map<G, RF>{{G::LeftDec, one}, {G::RightDec, poly(d, "x2 + x3")}});
  CHECK(term(d, x[5], x[4]) == std::map<G, RF>{{G::LeftBridge, one}});
  CHECK(d.delta[x[1]].empty());
  CHECK(d.delta[x[4]].empty());
  CHECK(d.num_terms() == 10);
  std::vector<std::string> zeta = {"-1/4", "1/4", "0", "1/4", "3/4", "1/2"};
  for (int k = 0; k < 6; ++k) CHECK(zeta_string(d.zeta4[x[k]]) == zeta[k]);

  auto T = build_Delta_T(fixture("hopf_right"));
  auto V = build_delta_V(fixture("hopf_right"));
  CHECK(T.num_terms() + V.num_terms() == d.num_terms());
  CHECK(term(T, x[0], x[1]) == std::map<G, RF>{{G::LeftDec, one}});
  CHECK(V.delta[x[5]].empty());
}

TEST_CASE("empty tangle") {
  auto d = build_delta(build_diagram(Side::Right, 1, {{K::Cap, 1}}, {}));
  CHECK(d.num_terms() == 0);
  CHECK(verify_structure(d).ok);
}

TEST_CASE("structure equation on fixtures") {
  for (auto name : {"hopf_right", "hopf_right_r2", "unknot0", "unknot1p", "unknot1n", "unknot2"}) {
    CAPTURE(name);
    auto t = fixture(name);
    auto d = build_delta(t);
    auto T = build_Delta_T(t);
    auto V = build_delta_V(t);
    auto r = verify_structure(d);
    CHECK_MESSAGE(r.ok, (r.failures.empty() ? "" : r.failures[0]));
    CHECK(verify_structure(T).ok);
    CHECK(verify_structure(V).ok);
    CHECK(verify_anticommute(T, V).ok);
    CHECK(verify_grading(d).ok);
  }
}

TEST_CASE("structure equation on generated tangles") {
  std::mt19937_64 rng(2024);
  struct Shape {
    int n, k, count;
  };
  for (Shape sh : {Shape{1, 1, 10}, Shape{1, 2, 20}, Shape{1, 3, 20}, Shape{2, 1, 20}, Shape{2, 2, 40}, Shape{2, 3, 40},
                   Shape{3, 1, 20}, Shape{3, 2, 30}}) {
    for (int it = 0; it < sh.count; ++it) {
      auto t = testing::random_tangle(rng, Side::Right, sh.n, sh.k);
      CAPTURE(to_json(t).dump());
      auto T = build_Delta_T(t);
      auto V = build_delta_V(t);
      auto d = build_delta(t);
      auto r = verify_structure(d);
      CHECK_MESSAGE(r.ok, (r.failures.empty() ? "" : r.failures[0]));
      auto rt = verify_structure(T);
      CHECK_MESSAGE(rt.ok, (rt.failures.empty() ? "" : rt.failures[0]));
      CHECK(verify_structure(V).ok);
      CHECK(verify_anticommute(T, V).ok);
      CHECK(verify_grading(d).ok);
    }
  }
}

TEST_CASE("corrupted delta fails") {
  auto d = build_delta(fixture("hopf_right"));
  auto x = hopf_states(d);
  d.delta[x[0]].erase(x[2]);
  auto r = verify_structure(d);
  CHECK_FALSE(r.ok);
  REQUIRE(!r.failures.empty());
  CHECK(r.failures[0].find("->") != std::string::npos);
}

TEST_CASE("transport") {
  auto d = build_delta(fixture("hopf_right"));
  Substitution id;
  auto same = transport(d, id);
  CHECK(same.delta.size() == d.delta.size());
  for (std::size_t i = 0; i < d.delta.size(); ++i) CHECK(same.delta[i] == d.delta[i]);

  Var x3 = *d.vars.find("x3"), x4 = *d.vars.find("x4"), x2 = *d.vars.find("x2");
  Substitution s1;
  s1.set(x3, Polynomial::var(x3) + Polynomial::var(x4));
  auto moved = transport(d, s1);
  CHECK(verify_structure(moved).ok);
  auto x = hopf_states(d);
  CHECK(term(moved, x[0], x[1]).at(GenKind::RightDec) == poly(d, "x3"));

  Substitution s2;
  s2.set(x4, Polynomial::var(x2) * Polynomial::var(x4));
  auto a = transport(transport(d, s1), s2);
  auto b = transport(d, s1.then(s2));
  for (std::size_t i = 0; i < d.delta.size(); ++i) CHECK(a.delta[i] == b.delta[i]);

  Substitution kill;
  kill.set(x3, Polynomial::var(x4));
  auto killed = transport(d, kill);
  CHECK(term(killed, x[0], x[1]).count(GenKind::RightDec) == 0);
}

TEST_CASE("identity morphism") {
  auto d = build_delta(fixture("hopf_right"));
  auto id = identity_morphism(d);
  CHECK(verify_morphism(id).ok);
  CHECK(equal_morphisms(compose(id, id), id));
  DMorphism zero{&d, &d, std::vector<std::map<int, AlgebraElement>>(d.states.size()), 0};
  CHECK(verify_homotopy(id, id, zero).ok);
  CHECK_FALSE(verify_homotopy(id, zero, zero).ok);
}

TEST_CASE("json dump") {
  auto d = build_delta(fixture("hopf_right"));
  auto j = to_json(d);
  CHECK(j["states"].size() == 6);
  std::size_t terms = 0;
  for (auto& s : j["states"]) {
    terms += s["terms"].size();
    for (auto& t : s["terms"]) {
      CHECK(t.contains("coeff"));
      CHECK(t.contains("kind"));
      CHECK(t.contains("target"));
    }
  }
  CHECK(terms == d.num_terms());
}
