#include "kh/fixtures.hpp"

namespace kh {

namespace {

using K = MorseEvent::Kind;

TangleDiagram hopf(Side side) {
  std::vector<std::string> names = side == Side::Right ? std::vector<std::string>{"x4", "x3", "x2", "x1"}
                                                       : std::vector<std::string>{"x8", "x7", "x6", "x5"};
  return build_diagram(side, 2, {{K::Cross, 2, 0}, {K::Cap, 1}, {K::Cap, 1}}, {{"c1", -1, true}}, names);
}

// Hopf right side after a Reidemeister 2 move on the two lower strands.
TangleDiagram hopf_r2() {
  return build_diagram(Side::Right, 2, {{K::Cross, 2, 0}, {K::Cross, 1, 1}, {K::Cross, 1, 2}, {K::Cap, 1}, {K::Cap, 1}},
                       {{"c1", -1, true}, {"r1", 1, true}, {"r2", -1, false}});
}

// A kink closes a free loop in its oriented smoothing: over=pos is positive.
TangleDiagram kinks(const std::vector<bool>& pos) {
  std::vector<MorseEvent> ev;
  std::vector<CrossingInfo> cr;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    ev.push_back({K::Cup, 2});
    ev.push_back({K::Cross, 1, static_cast<int>(k)});
    ev.push_back({K::Cap, 2});
    cr.push_back({"k" + std::to_string(k + 1), pos[k] ? 1 : -1, pos[k]});
  }
  ev.push_back({K::Cap, 1});
  return build_diagram(Side::Right, 1, ev, cr);
}

// Five crossings, two strands closed by caps. At the all-zero resolution the
// reduced structure has two single-inverse and two two-inverse idempotent terms.
TangleDiagram example2() {
  return build_diagram(Side::Right, 2,
                       {{K::Cross, 3, 0}, {K::Cross, 2, 1}, {K::Cross, 1, 2}, {K::Cross, 2, 3}, {K::Cross, 2, 4},
                        {K::Cap, 1}, {K::Cap, 1}},
                       {{"c1", 1, true}, {"c2", 1, false}, {"c3", -1, true}, {"c4", 1, true}, {"c5", 1, true}});
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"hopf_left", "hopf_right", "hopf_right_r2", "unknot0", "unknot1p", "unknot1n", "unknot2", "example2_right"};
}

TangleDiagram fixture(const std::string& name) {
  if (name == "hopf_left") return hopf(Side::Left);
  if (name == "hopf_right") return hopf(Side::Right);
  if (name == "hopf_right_r2") return hopf_r2();
  if (name == "unknot0") return kinks({});
  if (name == "unknot1p") return kinks({true});
  if (name == "unknot1n") return kinks({false});
  if (name == "unknot2") return kinks({true, false});
  if (name == "example2_right") return example2();
  throw Error(Err::UnknownFixture, "unknown fixture '" + name + "'");
}

}  // namespace kh
