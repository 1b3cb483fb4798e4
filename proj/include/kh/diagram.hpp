#pragma once

// Planar matchings, bridges, Morse-word tangles and their resolutions.
// Axis points are 1-based, p_1 at the bottom, p_2n (the marked point) on top.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kh/field.hpp"

namespace kh {

enum class Side { Left, Right };
inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
const char* side_name(Side s);

struct PlanarMatching {
  std::vector<int> partner;  // partner[p] for p in 1..2n; partner[0] unused

  static PlanarMatching from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);
  int n() const { return partner.empty() ? 0 : static_cast<int>(partner.size() - 1) / 2; }
  // (lo, hi) pairs sorted by lo
  std::vector<std::pair<int, int>> pairs() const;
  // lo point of the arc enclosing the arc with low end lo, 0 for the outer face
  int parent(int lo) const;
  bool operator==(const PlanarMatching& o) const { return partner == o.partner; }
  bool operator<(const PlanarMatching& o) const { return partner < o.partner; }
};

std::string to_string(const PlanarMatching& m);
// Catalan(n) matchings; p_1 pairs with p_2, p_4, ... in that order.
std::vector<PlanarMatching> enumerate_matchings(int n);

// Arcs are named by their low endpoint. a < b.
struct BridgeClass {
  Side side = Side::Right;
  int a = 0, b = 0;
  bool operator==(const BridgeClass& o) const { return side == o.side && a == o.a && b == o.b; }
  bool operator<(const BridgeClass& o) const {
    return std::tie(side, a, b) < std::tie(o.side, o.a, o.b);
  }
};
BridgeClass make_bridge(Side side, int a, int b);
std::string to_string(const BridgeClass& g);

// Faces are named by the low end of the enclosing arc (0 = outer face).
// Returns the common face of two distinct arcs, or -1.
int common_face(const PlanarMatching& m, int a, int b);
std::vector<BridgeClass> bridge_classes(const PlanarMatching& m, Side side);

struct MatchingSurgery {
  PlanarMatching result;
  BridgeClass cocore;  // gamma-dagger, a class of result
};
MatchingSurgery surger_matching(const PlanarMatching& m, const BridgeClass& g);

// Classes of m_g that eta (a class of m, eta != g) can be isotoped to after
// surgering g. Empty when every representative of eta meets the band.
std::vector<BridgeClass> bridge_images(const PlanarMatching& m, const BridgeClass& g, const BridgeClass& eta);

enum class BridgePair { Disjoint, OppositeSide, SameSide };
// Relative position of eta with respect to g (distinct classes of one side).
BridgePair classify_pair(const PlanarMatching& m, const BridgeClass& g, const BridgeClass& eta);
// True when eta (a class of m_g) crosses every representative of the co-core.
bool crosses_cocore(const PlanarMatching& m, const BridgeClass& g, const BridgeClass& eta);

// Circles of the closed-up picture left # right, ordered by smallest point.
struct LinkCircles {
  std::vector<std::vector<int>> points;
  std::vector<int> circle_of;  // indexed by axis point
  int marked = 0;              // circle through p_2n
};
LinkCircles link_circles(const PlanarMatching& left, const PlanarMatching& right);

// ---------------------------------------------------------------- tangles

struct MorseEvent {
  enum class Kind { Cup, Cap, Cross } kind = Kind::Cap;
  int i = 1;          // 1-based slot
  int crossing = -1;  // index into crossings for Cross
};

struct CrossingInfo {
  std::string id;
  int sign = 1;          // +1 / -1, only counted into n+ / n-
  bool over_pos = true;  // pos: 0-smoothing is the identity smoothing
};

// Crossing ports: the two strands entering from the axis side, and leaving.
enum Port { InLo = 0, InHi = 1, OutLo = 2, OutHi = 3 };

struct ArcEnd {
  int axis = 0;  // axis point, or 0
  int crossing = -1;
  int port = -1;
};

struct TangleDiagram {
  Side side = Side::Right;
  int n = 1;
  std::vector<MorseEvent> events;
  std::vector<CrossingInfo> crossings;

  int num_arcs = 0;
  std::vector<std::array<int, 4>> port_arc;  // crossing -> arc at each port
  std::vector<int> point_arc;                // axis point -> arc (index 0 unused)
  std::vector<std::vector<ArcEnd>> arc_ends;

  VarRegistry vars;
  std::vector<std::string> arc_name;
  std::vector<Polynomial> arc_weight;  // usually the arc's own variable

  int n_plus() const;
  int n_minus() const;
  int num_crossings() const { return static_cast<int>(crossings.size()); }
};

// Validates the Morse word, builds arcs and registers arc variables.
// names: arc index (0-based) -> name; empty means x1, x2, ... in discovery order.
TangleDiagram build_diagram(Side side, int n, std::vector<MorseEvent> events, std::vector<CrossingInfo> crossings,
                            const std::vector<std::string>& names = {});
TangleDiagram parse_diagram(const nlohmann::json& j);
nlohmann::json to_json(const TangleDiagram& t);
// Same picture reflected across the axis.
TangleDiagram mirror(const TangleDiagram& t);

// A resolution is a bitmask over crossings (bit c = rho(c)).
using ResolutionMask = uint32_t;

struct Component {
  std::vector<int> arcs;  // sorted
  int lo = 0, hi = 0;     // axis endpoints; 0 for a free circle
  Polynomial weight;
  bool free() const { return lo == 0; }
};

struct Resolved {
  ResolutionMask rho = 0;
  int h = 0;
  PlanarMatching m;  // matching on the tangle's side
  std::vector<Component> comps;
  std::vector<int> comp_of_arc;
  std::vector<int> comp_of_point;
  std::vector<int> free;  // free component indices, ordered by smallest arc
};

Resolved resolve_tangle(const TangleDiagram& t, ResolutionMask rho);
// The two smoothing strands at crossing c, as component indices.
std::pair<int, int> site_feet(const TangleDiagram& t, const Resolved& r, int c);

// Circles of other # rho: cleaved circles first (ordered by smallest axis
// point), then free circles in Resolved::free order.
struct Circle {
  bool free = false;
  std::vector<int> points;
  std::vector<int> comps;
  std::vector<int> sig;  // arcs >= 0, axis points as -p; identifies the circle across surgeries
  bool marked = false;
  Polynomial weight;  // weight restricted to the tangle's side
};

struct BridgeSite {
  int crossing = -1;
  int foot_a = -1, foot_b = -1;      // components
  int circle_a = -1, circle_b = -1;  // circles
  bool same_component = false;
  bool active = false;
};

struct CircleSet {
  std::vector<Circle> circles;
  int n_cleaved = 0;
  int marked = -1;
  std::vector<int> circle_of_comp;
  std::vector<BridgeSite> sites;
};

CircleSet resolve(const TangleDiagram& t, const Resolved& r, const PlanarMatching& other);
std::vector<std::vector<int>> signatures(const CircleSet& cs);

// Decorations: +1 / -1 per circle, in CircleSet order.
using Decoration = std::vector<int8_t>;

// Frobenius images of dec across a merge or divide between two circle systems
// that differ in one surgery. Outputs with the marked circle + are dropped.
std::vector<Decoration> transfer_decorations(const std::vector<std::vector<int>>& from, const Decoration& dec,
                                             const std::vector<std::vector<int>>& to, int to_marked);

enum class BoundaryEffect { PreservesBoundary, FlipsDecorationCapable, ChangesMatching };

struct SurgeryOutcome {
  bool merge = false;
  std::vector<int> old_circles;  // circles touched in the source
  Resolved resolved;             // rho with the site's crossing set to 1
  CircleSet circles;
  BoundaryEffect effect = BoundaryEffect::PreservesBoundary;
  std::optional<BridgeClass> induced;  // only for ChangesMatching
};
SurgeryOutcome surger_circles(const TangleDiagram& t, const Resolved& r, const CircleSet& cs, const BridgeSite& site,
                              const PlanarMatching& other);

struct Grading {
  int h = 0;
  int q2 = 0;     // twice q
  int zeta4 = 0;  // four times zeta
};
// h = h(rho) - n-, q = h(rho) + i/2 + #(+free) - #(-free) + n+ - 2n-, zeta = h - q/2.
Grading state_grading(const TangleDiagram& t, const Resolved& r, const CircleSet& cs, const Decoration& dec);
std::string zeta_string(int zeta4);

}  // namespace kh
