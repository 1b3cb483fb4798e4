#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kh/fixtures.hpp"
#include "kh/pairing.hpp"
#include "kh/weightmoves.hpp"
#include "tangle_gen.hpp"

using namespace kh;

namespace {

std::string first(const Report& r) { return r.failures.empty() ? "" : r.failures[0]; }

Polynomial var(const TangleDiagram& t, const char* name) { return Polynomial::var(*t.vars.find(name)); }

// I from one structure to the other, both on the same states
DMorphism plain_identity(const TypeDStructure& a, const TypeDStructure& b) {
  DMorphism f{&a, &b, std::vector<std::map<int, AlgebraElement>>(a.states.size()), 0};
  for (int i = 0; i < static_cast<int>(a.states.size()); ++i) f.map[i].emplace(i, a.alg().idempotent(a.boundary[i]));
  return f;
}

}  // namespace

TEST_CASE("port pairs") {
  CHECK(port_pairs().size() == 6);
  auto t = fixture("hopf_right");
  auto m = make_weight_move(t, 0, InLo, OutHi, var(t, "x1"));
  int changed = 0;
  for (int a = 0; a < t.num_arcs; ++a) changed += !(m.source.arc_weight[a] == m.target.arc_weight[a]);
  CHECK(changed == 2);
  CHECK_THROWS_AS(make_weight_move(t, 3, InLo, OutHi, var(t, "x1")), Error);
  CHECK_THROWS_AS(make_weight_move(t, 0, InLo, InLo, var(t, "x1")), Error);
}

TEST_CASE("Dc support and grading") {
  auto t = fixture("hopf_right_r2");
  for (int c = 0; c < t.num_crossings(); ++c) {
    auto mv = make_weight_move(t, c, InHi, OutLo, var(t, "x2"));
    auto m = weight_move_maps(mv);
    auto dc = build_Dc(mv, *m.d_source, *m.d_target);
    Algebra& A = m.d_source->alg();
    int terms = 0;
    for (int i = 0; i < static_cast<int>(dc.map.size()); ++i) {
      bool one = (m.d_source->states[i].rho >> c) & 1;
      if (!one) CHECK(dc.map[i].empty());
      for (auto& [j, e] : dc.map[i]) {
        ++terms;
        CHECK(((m.d_target->states[j].rho >> c) & 1) == 0);
        REQUIRE(e.terms.size() == 1);
        const Word& w = e.terms.begin()->first;
        REQUIRE(w.size() <= 1);
        if (!w.empty()) {
          GenKind k = A.gen(w[0]).kind;
          bool right = k == GenKind::RightBridge || k == GenKind::RightDec;
          CHECK(right);
        }
        CHECK(m.d_target->zeta4[j] + A.zeta4(w) == m.d_source->zeta4[i]);
      }
    }
    CHECK(terms > 0);
  }
}

TEST_CASE("Dc on a single kink") {
  // hand rule: reverse surgery splits or merges the free circle against the marked one
  for (auto name : {"unknot1p", "unknot1n"}) {
    CAPTURE(name);
    auto t = fixture(name);
    auto mv = make_weight_move(t, 0, InLo, OutHi, var(t, "x1"));
    auto m = weight_move_maps(mv);
    auto dc = build_Dc(mv, *m.d_source, *m.d_target);
    const auto& d = *m.d_source;
    REQUIRE(d.states.size() == 3);
    bool free_at_one = false;
    for (auto& s : d.states) free_at_one |= s.rho == 1 && s.dec.size() == 2;
    std::set<std::pair<std::string, std::string>> want, got;
    if (free_at_one) {
      // merge: (-, +) -> -, (-, -) -> 0
      want.insert({"-+", "-"});
    } else {
      // split: - -> (-, -)
      want.insert({"-", "--"});
    }
    auto dec = [](const DState& s) {
      std::string o;
      for (auto x : s.dec) o += x > 0 ? '+' : '-';
      return o;
    };
    for (int i = 0; i < 3; ++i)
      for (auto& [j, e] : dc.map[i]) {
        got.insert({dec(d.states[i]), dec(m.d_target->states[j])});
        CHECK(e == d.alg().idempotent(d.boundary[i]));
      }
    CHECK(got == want);
  }
}

TEST_CASE("zero weight gives the identity") {
  auto t = fixture("hopf_right");
  auto mv = make_weight_move(t, 0, InLo, OutHi, Polynomial());
  auto m = weight_move_maps(mv);
  CHECK(equal_morphisms(m.psi, plain_identity(*m.d_source, *m.d_target)));
}

TEST_CASE("hopf weight move") {
  auto t = fixture("hopf_right");
  for (auto [a, b] : diagonal_port_pairs()) {
    auto mv = make_weight_move(t, 0, a, b, var(t, "x3") + var(t, "x1"));
    auto m = weight_move_maps(mv);
    CHECK_MESSAGE(verify_morphism(m.psi).ok, first(verify_morphism(m.psi)));
    CHECK(verify_morphism(m.phi).ok);
    CHECK(equal_morphisms(compose(m.phi, m.psi), identity_morphism(*m.d_source)));
    CHECK(equal_morphisms(compose(m.psi, m.phi), identity_morphism(*m.d_target)));
    // Phi has the shape of Psi
    auto up = build_Dc(mv, *m.d_source, *m.d_target);
    auto down = build_Dc(mv, *m.d_target, *m.d_source);
    CHECK(up.map == down.map);
    // dropping w * Dc breaks the equation
    CHECK_FALSE(verify_morphism(plain_identity(*m.d_source, *m.d_target)).ok);
    // composing with the identity
    CHECK(equal_morphisms(compose(identity_morphism(*m.d_target), m.psi), m.psi));
    CHECK(equal_morphisms(compose(m.psi, identity_morphism(*m.d_source)), m.psi));
  }
}

TEST_CASE("generated weight moves") {
  std::mt19937_64 rng(12);
  int checked = 0, adjacent_failures = 0;
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= 2; ++k)
      for (int it = 0; it < 5; ++it) {
        auto t = testing::random_tangle(rng, Side::Right, n, k);
        CAPTURE(to_json(t).dump());
        for (int c = 0; c < k; ++c) {
          Polynomial w = Polynomial::var(static_cast<Var>(rng() % t.vars.size()));
          for (auto [a, b] : diagonal_port_pairs()) {
            auto r = check_weight_move(make_weight_move(t, c, a, b, w));
            CHECK_MESSAGE(r.ok(), (r.failures.empty() ? "" : r.failures[0]));
            ++checked;
          }
          adjacent_failures += !check_weight_move(make_weight_move(t, c, InLo, InHi, w)).ok();
        }
      }
  CHECK(checked > 40);
  CHECK(adjacent_failures > 0);
}

TEST_CASE("weight moves keep paired homology") {
  auto l = testing::renamed_left(fixture("hopf_right"));
  auto a = build_type_a(l);
  std::mt19937_64 rng(4);
  for (int it = 0; it < 4; ++it) {
    auto t = it == 0 ? fixture("hopf_right") : testing::random_tangle(rng, Side::Right, 2, 2);
    auto mv = make_weight_move(t, 0, InHi, OutLo, Polynomial::var(0));
    auto m = weight_move_maps(mv);
    RankOptions fast{RankMode::Randomized, 3};
    CHECK(homology_ranks(box_tensor(a, *m.d_source), fast) == homology_ranks(box_tensor(a, *m.d_target), fast));
  }
}

TEST_CASE("json") {
  auto t = fixture("hopf_right");
  auto r = check_weight_move(make_weight_move(t, 0, InLo, OutHi, var(t, "x2")));
  auto j = to_json(r);
  CHECK(j["ok"] == true);
  CHECK(j["failures"].empty());
}
