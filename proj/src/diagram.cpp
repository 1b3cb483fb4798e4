#include "kh/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace kh {

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

// ---------------------------------------------------------------- matchings

PlanarMatching PlanarMatching::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  PlanarMatching m;
  m.partner.assign(2 * n + 1, 0);
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > 2 * n || b > 2 * n || a == b || m.partner[a] || m.partner[b])
      throw Error(Err::SchemaError, "bad matching pair");
    m.partner[a] = b;
    m.partner[b] = a;
  }
  for (int p = 1; p <= 2 * n; ++p)
    if (!m.partner[p]) throw Error(Err::SchemaError, "matching is not perfect");
  for (auto [a, b] : m.pairs())
    for (auto [c, d] : m.pairs())
      if (a < c && c < b && b < d) throw Error(Err::SchemaError, "matching is not planar");
  return m;
}

std::vector<std::pair<int, int>> PlanarMatching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 1; p < static_cast<int>(partner.size()); ++p)
    if (partner[p] > p) out.emplace_back(p, partner[p]);
  return out;
}

int PlanarMatching::parent(int lo) const {
  int hi = partner[lo];
  int best = 0, best_lo = 0;
  for (auto [a, b] : pairs())
    if (a < lo && hi < b && (best == 0 || a > best_lo)) best = b, best_lo = a;
  return best_lo;
}

std::string to_string(const PlanarMatching& m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [a, b] : m.pairs()) {
    if (!first) os << ',';
    first = false;
    os << '(' << a << ',' << b << ')';
  }
  os << '}';
  return os.str();
}

namespace {

void matchings_rec(std::vector<int>& partner, int lo, int hi, std::vector<std::vector<int>>& out,
                   std::vector<std::pair<int, int>> todo) {
  // fill interval [lo, hi]; remaining intervals in todo
  if (lo > hi) {
    if (todo.empty()) {
      out.push_back(partner);
      return;
    }
    auto [l, h] = todo.back();
    todo.pop_back();
    matchings_rec(partner, l, h, out, todo);
    return;
  }
  for (int j = lo + 1; j <= hi; j += 2) {
    partner[lo] = j;
    partner[j] = lo;
    auto t = todo;
    t.emplace_back(j + 1, hi);
    matchings_rec(partner, lo + 1, j - 1, out, t);
  }
}

}  // namespace

std::vector<PlanarMatching> enumerate_matchings(int n) {
  std::vector<int> partner(2 * n + 1, 0);
  std::vector<std::vector<int>> raw;
  matchings_rec(partner, 1, 2 * n, raw, {});
  std::vector<PlanarMatching> out;
  for (auto& p : raw) out.push_back(PlanarMatching{p});
  return out;
}

// ---------------------------------------------------------------- bridges

BridgeClass make_bridge(Side side, int a, int b) {
  if (a > b) std::swap(a, b);
  return BridgeClass{side, a, b};
}

std::string to_string(const BridgeClass& g) {
  return std::string(side_name(g.side)) + "[" + std::to_string(g.a) + "," + std::to_string(g.b) + "]";
}

namespace {

// Faces bordered by the arc with low end lo: its inner face and its parent face.
std::array<int, 2> faces_of(const PlanarMatching& m, int lo) { return {lo, m.parent(lo)}; }

// Arcs (by low end) on the boundary of face f.
std::vector<int> face_arcs(const PlanarMatching& m, int f) {
  std::vector<int> out;
  if (f) out.push_back(f);
  for (auto [a, b] : m.pairs()) {
    (void)b;
    if (a != f && m.parent(a) == f) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Arc endpoints in the direction the face boundary walk traverses it.
std::pair<int, int> traversal(const PlanarMatching& m, int lo, int face) {
  int hi = m.partner[lo];
  if (lo == face) return {hi, lo};
  return {lo, hi};
}

}  // namespace

int common_face(const PlanarMatching& m, int a, int b) {
  if (a == b) return -1;
  auto fa = faces_of(m, a), fb = faces_of(m, b);
  for (int x : fa)
    for (int y : fb)
      if (x == y) return x;
  return -1;
}

std::vector<BridgeClass> bridge_classes(const PlanarMatching& m, Side side) {
  std::vector<int> faces = {0};
  for (auto [a, b] : m.pairs()) {
    (void)b;
    faces.push_back(a);
  }
  std::set<BridgeClass> out;
  for (int f : faces) {
    auto arcs = face_arcs(m, f);
    for (std::size_t i = 0; i < arcs.size(); ++i)
      for (std::size_t j = i + 1; j < arcs.size(); ++j) out.insert(make_bridge(side, arcs[i], arcs[j]));
  }
  return {out.begin(), out.end()};
}

MatchingSurgery surger_matching(const PlanarMatching& m, const BridgeClass& g) {
  int f = common_face(m, g.a, g.b);
  if (f < 0) throw Error(Err::SchemaError, "bridge " + to_string(g) + " is not a class of " + to_string(m));
  auto [x1, x2] = traversal(m, g.a, f);
  auto [y1, y2] = traversal(m, g.b, f);
  MatchingSurgery out;
  out.result = m;
  auto& p = out.result.partner;
  p[x2] = y1, p[y1] = x2;
  p[y2] = x1, p[x1] = y2;
  out.cocore = make_bridge(g.side, std::min(x2, y1), std::min(y2, x1));
  return out;
}

std::vector<BridgeClass> bridge_images(const PlanarMatching& m, const BridgeClass& g, const BridgeClass& eta) {
  auto s = surger_matching(m, g);
  std::vector<int> fresh = {s.cocore.a, s.cocore.b};
  auto cands = [&](int arc) -> std::vector<int> {
    if (arc == g.a || arc == g.b) return fresh;
    return {arc};
  };
  std::set<BridgeClass> out;
  for (int u : cands(eta.a))
    for (int v : cands(eta.b))
      if (u != v && common_face(s.result, u, v) >= 0) out.insert(make_bridge(g.side, u, v));
  return {out.begin(), out.end()};
}

BridgePair classify_pair(const PlanarMatching& m, const BridgeClass& g, const BridgeClass& eta) {
  int shared = 0;
  for (int x : {g.a, g.b})
    for (int y : {eta.a, eta.b}) shared += x == y;
  if (shared == 0 || g.side != eta.side) return BridgePair::Disjoint;
  return common_face(m, g.a, g.b) == common_face(m, eta.a, eta.b) ? BridgePair::SameSide : BridgePair::OppositeSide;
}

bool crosses_cocore(const PlanarMatching& m, const BridgeClass& g, const BridgeClass& eta) {
  auto s = surger_matching(m, g);
  for (int x : {eta.a, eta.b})
    if (x == s.cocore.a || x == s.cocore.b) return false;
  return common_face(m, eta.a, eta.b) < 0;
}

LinkCircles link_circles(const PlanarMatching& left, const PlanarMatching& right) {
  int np = static_cast<int>(left.partner.size()) - 1;
  LinkCircles out;
  out.circle_of.assign(np + 1, -1);
  for (int p = 1; p <= np; ++p) {
    if (out.circle_of[p] >= 0) continue;
    int id = static_cast<int>(out.points.size());
    out.points.emplace_back();
    int q = p;
    do {
      out.circle_of[q] = id;
      out.points.back().push_back(q);
      int r = right.partner[q];
      out.circle_of[r] = id;
      out.points.back().push_back(r);
      q = left.partner[r];
    } while (q != p);
    std::sort(out.points.back().begin(), out.points.back().end());
  }
  out.marked = out.circle_of[np];
  return out;
}

// ---------------------------------------------------------------- tangles

int TangleDiagram::n_plus() const {
  return static_cast<int>(std::count_if(crossings.begin(), crossings.end(), [](auto& c) { return c.sign > 0; }));
}
int TangleDiagram::n_minus() const { return num_crossings() - n_plus(); }

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n = 0) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int add() {
    p.push_back(static_cast<int>(p.size()));
    return p.back();
  }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

TangleDiagram build_diagram(Side side, int n, std::vector<MorseEvent> events, std::vector<CrossingInfo> crossings,
                            const std::vector<std::string>& names) {
  if (n < 1) throw Error(Err::SchemaError, "n must be positive");
  TangleDiagram t;
  t.side = side;
  t.n = n;
  t.events = std::move(events);
  t.crossings = std::move(crossings);
  if (t.crossings.size() > 31) throw Error(Err::SchemaError, "too many crossings");

  // Segments are strand pieces between events; each end is an axis point,
  // a crossing port, or joined to another segment by a cup or cap.
  UnionFind uf;
  std::vector<std::vector<ArcEnd>> seg_ends;
  auto new_seg = [&]() {
    seg_ends.emplace_back();
    return uf.add();
  };
  std::vector<int> slots;
  for (int p = 1; p <= 2 * n; ++p) {
    int s = new_seg();
    seg_ends[s].push_back(ArcEnd{p, -1, -1});
    slots.push_back(s);
  }
  std::vector<std::array<int, 4>> port_seg(t.crossings.size(), {-1, -1, -1, -1});
  std::vector<bool> used(t.crossings.size(), false);
  for (std::size_t k = 0; k < t.events.size(); ++k) {
    const auto& e = t.events[k];
    int i = e.i - 1;
    int w = static_cast<int>(slots.size());
    std::string where = "event " + std::to_string(k + 1);
    switch (e.kind) {
      case MorseEvent::Kind::Cup: {
        if (i < 0 || i > w) throw Error(Err::NonPlanarEvent, where + ": cup slot out of range");
        int s = new_seg();
        slots.insert(slots.begin() + i, {s, s});
        break;
      }
      case MorseEvent::Kind::Cap: {
        if (i < 0 || i + 1 >= w) throw Error(Err::NonPlanarEvent, where + ": cap slot out of range");
        uf.unite(slots[i], slots[i + 1]);
        slots.erase(slots.begin() + i, slots.begin() + i + 2);
        break;
      }
      case MorseEvent::Kind::Cross: {
        if (i < 0 || i + 1 >= w) throw Error(Err::NonPlanarEvent, where + ": crossing slot out of range");
        int c = e.crossing;
        if (c < 0 || c >= static_cast<int>(t.crossings.size()) || used[c])
          throw Error(Err::SchemaError, where + ": bad crossing reference");
        used[c] = true;
        int lo = slots[i], hi = slots[i + 1];
        seg_ends[lo].push_back(ArcEnd{0, c, InLo});
        seg_ends[hi].push_back(ArcEnd{0, c, InHi});
        int olo = new_seg(), ohi = new_seg();
        seg_ends[olo].push_back(ArcEnd{0, c, OutLo});
        seg_ends[ohi].push_back(ArcEnd{0, c, OutHi});
        port_seg[c] = {lo, hi, olo, ohi};
        slots[i] = olo;
        slots[i + 1] = ohi;
        break;
      }
    }
  }
  if (!slots.empty())
    throw Error(Err::NonPlanarEvent, "events end with " + std::to_string(slots.size()) + " strands");
  for (std::size_t c = 0; c < used.size(); ++c)
    if (!used[c]) throw Error(Err::SchemaError, "crossing " + t.crossings[c].id + " never placed");

  // arcs = classes of segments, numbered by smallest segment
  int nseg = static_cast<int>(seg_ends.size());
  std::vector<int> arc_of_root(nseg, -1);
  std::vector<int> arc_of_seg(nseg);
  for (int s = 0; s < nseg; ++s) {
    int r = uf.find(s);
    if (arc_of_root[r] < 0) {
      arc_of_root[r] = t.num_arcs++;
      t.arc_ends.emplace_back();
    }
    arc_of_seg[s] = arc_of_root[r];
    for (auto& end : seg_ends[s]) t.arc_ends[arc_of_seg[s]].push_back(end);
  }
  for (int a = 0; a < t.num_arcs; ++a)
    if (t.arc_ends[a].empty()) throw Error(Err::ClosedFreeComponent, "closed component without crossings");
  t.port_arc.resize(t.crossings.size());
  for (std::size_t c = 0; c < t.crossings.size(); ++c)
    for (int k = 0; k < 4; ++k) t.port_arc[c][k] = arc_of_seg[port_seg[c][k]];
  t.point_arc.assign(2 * n + 1, -1);
  for (int p = 1; p <= 2 * n; ++p) t.point_arc[p] = arc_of_seg[p - 1];

  if (!names.empty() && static_cast<int>(names.size()) != t.num_arcs)
    throw Error(Err::SchemaError, "arc table has " + std::to_string(names.size()) + " names for " +
                                      std::to_string(t.num_arcs) + " arcs");
  for (int a = 0; a < t.num_arcs; ++a) {
    std::string nm = names.empty() ? "x" + std::to_string(a + 1) : names[a];
    Var v = t.vars.add(nm);
    t.arc_name.push_back(nm);
    t.arc_weight.push_back(Polynomial::var(v));
  }
  return t;
}

TangleDiagram parse_diagram(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw Error(Err::SchemaError, "diagram must be an object");
    std::string side = j.at("side").get<std::string>();
    if (side != "left" && side != "right") throw Error(Err::SchemaError, "side must be left or right");
    int n = j.at("n").get<int>();
    std::vector<MorseEvent> events;
    std::vector<CrossingInfo> crossings;
    for (const auto& e : j.at("events")) {
      MorseEvent ev;
      if (e.contains("cup")) {
        ev.kind = MorseEvent::Kind::Cup;
        ev.i = e.at("cup").get<int>();
      } else if (e.contains("cap")) {
        ev.kind = MorseEvent::Kind::Cap;
        ev.i = e.at("cap").get<int>();
      } else if (e.contains("cross")) {
        ev.kind = MorseEvent::Kind::Cross;
        ev.i = e.at("cross").get<int>();
        CrossingInfo ci;
        ci.id = e.value("id", "c" + std::to_string(crossings.size() + 1));
        std::string sign = e.value("sign", "+");
        if (sign != "+" && sign != "-") throw Error(Err::SchemaError, "sign must be + or -");
        ci.sign = sign == "+" ? 1 : -1;
        std::string over = e.value("over", "pos");
        if (over != "pos" && over != "neg") throw Error(Err::SchemaError, "over must be pos or neg");
        ci.over_pos = over == "pos";
        for (auto& o : crossings)
          if (o.id == ci.id) throw Error(Err::SchemaError, "duplicate crossing id " + ci.id);
        ev.crossing = static_cast<int>(crossings.size());
        crossings.push_back(ci);
      } else {
        throw Error(Err::SchemaError, "unknown event " + e.dump());
      }
      events.push_back(ev);
    }
    std::vector<std::string> names;
    std::map<int, std::string> given;
    if (j.contains("arcs") && j.at("arcs").is_object()) {
      for (auto& [k, v] : j.at("arcs").items()) given[std::stoi(k)] = v.get<std::string>();
    } else if (j.contains("arcs") && !(j.at("arcs").is_string() && j.at("arcs") == "auto")) {
      throw Error(Err::SchemaError, "arcs must be \"auto\" or an object");
    }
    TangleDiagram t = build_diagram(side == "left" ? Side::Left : Side::Right, n, events, crossings);
    if (!given.empty()) {
      for (auto& [k, v] : given)
        if (k < 1 || k > t.num_arcs) throw Error(Err::SchemaError, "arc index out of range");
      for (int a = 1; a <= t.num_arcs; ++a) names.push_back(given.count(a) ? given[a] : "x" + std::to_string(a));
      t = build_diagram(t.side, n, t.events, t.crossings, names);
    }
    if (j.contains("weights")) {
      for (auto& [k, v] : j.at("weights").items()) {
        int a = std::stoi(k);
        if (a < 1 || a > t.num_arcs) throw Error(Err::SchemaError, "weight arc index out of range");
        t.arc_weight[a - 1] = parse_polynomial(v.get<std::string>(), t.vars);
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Err::SchemaError, e.what());
  } catch (const std::invalid_argument&) {
    throw Error(Err::SchemaError, "arc keys must be integers");
  }
}

nlohmann::json to_json(const TangleDiagram& t) {
  nlohmann::json j;
  j["side"] = side_name(t.side);
  j["n"] = t.n;
  j["events"] = nlohmann::json::array();
  for (auto& e : t.events) {
    nlohmann::json ev;
    if (e.kind == MorseEvent::Kind::Cup) ev["cup"] = e.i;
    if (e.kind == MorseEvent::Kind::Cap) ev["cap"] = e.i;
    if (e.kind == MorseEvent::Kind::Cross) {
      const auto& c = t.crossings[e.crossing];
      ev["cross"] = e.i;
      ev["id"] = c.id;
      ev["sign"] = c.sign > 0 ? "+" : "-";
      ev["over"] = c.over_pos ? "pos" : "neg";
    }
    j["events"].push_back(ev);
  }
  nlohmann::json arcs = nlohmann::json::object();
  nlohmann::json weights = nlohmann::json::object();
  for (int a = 0; a < t.num_arcs; ++a) {
    arcs[std::to_string(a + 1)] = t.arc_name[a];
    if (!(t.arc_weight[a] == Polynomial::var(static_cast<Var>(a))))
      weights[std::to_string(a + 1)] = to_string(t.arc_weight[a], &t.vars);
  }
  j["arcs"] = arcs;
  if (!weights.empty()) j["weights"] = weights;
  return j;
}

TangleDiagram mirror(const TangleDiagram& t) {
  TangleDiagram m = t;
  m.side = opposite(t.side);
  return m;
}

// ---------------------------------------------------------------- resolutions

namespace {

// Port pairs joined by the smoothing of crossing c under rho.
std::array<std::pair<int, int>, 2> smoothing(const TangleDiagram& t, ResolutionMask rho, int c) {
  bool one = (rho >> c) & 1;
  bool identity = t.crossings[c].over_pos ? !one : one;
  if (identity) return {{{InLo, OutLo}, {InHi, OutHi}}};
  return {{{InLo, InHi}, {OutLo, OutHi}}};
}

}  // namespace

Resolved resolve_tangle(const TangleDiagram& t, ResolutionMask rho) {
  Resolved r;
  r.rho = rho;
  r.h = __builtin_popcount(rho);
  UnionFind uf(t.num_arcs);
  for (int c = 0; c < t.num_crossings(); ++c)
    for (auto [p, q] : smoothing(t, rho, c)) uf.unite(t.port_arc[c][p], t.port_arc[c][q]);
  std::vector<int> comp_of_root(t.num_arcs, -1);
  r.comp_of_arc.assign(t.num_arcs, -1);
  for (int a = 0; a < t.num_arcs; ++a) {
    int root = uf.find(a);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<int>(r.comps.size());
      r.comps.emplace_back();
    }
    int ci = comp_of_root[root];
    r.comp_of_arc[a] = ci;
    r.comps[ci].arcs.push_back(a);
    r.comps[ci].weight += t.arc_weight[a];
  }
  r.comp_of_point.assign(2 * t.n + 1, -1);
  for (int p = 1; p <= 2 * t.n; ++p) {
    int ci = r.comp_of_arc[t.point_arc[p]];
    r.comp_of_point[p] = ci;
    auto& comp = r.comps[ci];
    if (!comp.lo)
      comp.lo = p;
    else
      comp.hi = p;
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t ci = 0; ci < r.comps.size(); ++ci) {
    if (r.comps[ci].free())
      r.free.push_back(static_cast<int>(ci));
    else
      pairs.emplace_back(r.comps[ci].lo, r.comps[ci].hi);
  }
  r.m = PlanarMatching::from_pairs(t.n, pairs);
  return r;
}

std::pair<int, int> site_feet(const TangleDiagram& t, const Resolved& r, int c) {
  auto sm = smoothing(t, r.rho, c);
  return {r.comp_of_arc[t.port_arc[c][sm[0].first]], r.comp_of_arc[t.port_arc[c][sm[1].first]]};
}

CircleSet resolve(const TangleDiagram& t, const Resolved& r, const PlanarMatching& other) {
  CircleSet cs;
  const PlanarMatching& left = t.side == Side::Right ? other : r.m;
  const PlanarMatching& right = t.side == Side::Right ? r.m : other;
  auto lc = link_circles(left, right);
  cs.circle_of_comp.assign(r.comps.size(), -1);
  for (std::size_t k = 0; k < lc.points.size(); ++k) {
    Circle c;
    c.points = lc.points[k];
    c.marked = static_cast<int>(k) == lc.marked;
    for (int p : c.points) {
      int ci = r.comp_of_point[p];
      if (cs.circle_of_comp[ci] < 0) {
        cs.circle_of_comp[ci] = static_cast<int>(k);
        c.comps.push_back(ci);
        c.weight += r.comps[ci].weight;
        for (int a : r.comps[ci].arcs) c.sig.push_back(a);
      }
      c.sig.push_back(-p);
    }
    std::sort(c.sig.begin(), c.sig.end());
    cs.circles.push_back(std::move(c));
  }
  cs.n_cleaved = static_cast<int>(cs.circles.size());
  cs.marked = lc.marked;
  for (int ci : r.free) {
    Circle c;
    c.free = true;
    c.comps = {ci};
    c.sig = r.comps[ci].arcs;
    c.weight = r.comps[ci].weight;
    cs.circle_of_comp[ci] = static_cast<int>(cs.circles.size());
    cs.circles.push_back(std::move(c));
  }
  for (int c = 0; c < t.num_crossings(); ++c) {
    BridgeSite s;
    s.crossing = c;
    auto [a, b] = site_feet(t, r, c);
    s.foot_a = a, s.foot_b = b;
    s.circle_a = cs.circle_of_comp[a];
    s.circle_b = cs.circle_of_comp[b];
    s.same_component = a == b;
    s.active = !((r.rho >> c) & 1);
    cs.sites.push_back(s);
  }
  return cs;
}

std::vector<std::vector<int>> signatures(const CircleSet& cs) {
  std::vector<std::vector<int>> out;
  for (auto& c : cs.circles) out.push_back(c.sig);
  return out;
}

std::vector<Decoration> transfer_decorations(const std::vector<std::vector<int>>& from, const Decoration& dec,
                                             const std::vector<std::vector<int>>& to, int to_marked) {
  std::vector<int> old_touched, new_touched;
  std::vector<int> map_to(to.size(), -1);
  for (std::size_t j = 0; j < to.size(); ++j) {
    auto it = std::find(from.begin(), from.end(), to[j]);
    if (it == from.end())
      new_touched.push_back(static_cast<int>(j));
    else
      map_to[j] = static_cast<int>(it - from.begin());
  }
  for (std::size_t i = 0; i < from.size(); ++i)
    if (std::find(to.begin(), to.end(), from[i]) == to.end()) old_touched.push_back(static_cast<int>(i));

  Decoration base(to.size(), -1);
  for (std::size_t j = 0; j < to.size(); ++j)
    if (map_to[j] >= 0) base[j] = dec[map_to[j]];
  std::vector<Decoration> out;
  if (old_touched.size() == 2 && new_touched.size() == 1) {
    int a = dec[old_touched[0]], b = dec[old_touched[1]];
    if (a < 0 && b < 0) return {};
    base[new_touched[0]] = (a > 0 && b > 0) ? 1 : -1;
    out.push_back(base);
  } else if (old_touched.size() == 1 && new_touched.size() == 2) {
    if (dec[old_touched[0]] > 0) {
      auto d1 = base, d2 = base;
      d1[new_touched[0]] = 1, d1[new_touched[1]] = -1;
      d2[new_touched[0]] = -1, d2[new_touched[1]] = 1;
      out.push_back(d1);
      out.push_back(d2);
    } else {
      base[new_touched[0]] = base[new_touched[1]] = -1;
      out.push_back(base);
    }
  } else {
    throw Error(Err::SchemaError, "circle systems do not differ by one surgery");
  }
  std::vector<Decoration> kept;
  for (auto& d : out)
    if (to_marked < 0 || d[to_marked] < 0) kept.push_back(d);
  return kept;
}

SurgeryOutcome surger_circles(const TangleDiagram& t, const Resolved& r, const CircleSet& /*cs*/, const BridgeSite& site,
                              const PlanarMatching& other) {
  if (!site.active) throw Error(Err::InactiveBridge, "site at crossing " + t.crossings[site.crossing].id);
  SurgeryOutcome out;
  out.merge = site.circle_a != site.circle_b;
  out.old_circles = {site.circle_a};
  if (out.merge) out.old_circles.push_back(site.circle_b);
  out.resolved = resolve_tangle(t, r.rho | (ResolutionMask{1} << site.crossing));
  out.circles = resolve(t, out.resolved, other);
  bool free_a = r.comps[site.foot_a].free(), free_b = r.comps[site.foot_b].free();
  if (free_a && free_b) {
    out.effect = BoundaryEffect::PreservesBoundary;
  } else if (free_a || free_b || site.same_component) {
    out.effect = BoundaryEffect::FlipsDecorationCapable;
  } else {
    out.effect = BoundaryEffect::ChangesMatching;
    out.induced = make_bridge(t.side, r.comps[site.foot_a].lo, r.comps[site.foot_b].lo);
    if (!(surger_matching(r.m, *out.induced).result == out.resolved.m))
      throw Error(Err::SchemaError, "induced bridge does not reproduce the surgered matching");
  }
  return out;
}

Grading state_grading(const TangleDiagram& t, const Resolved& r, const CircleSet& cs, const Decoration& dec) {
  int i = 0, f = 0;
  for (std::size_t k = 0; k < cs.circles.size(); ++k) {
    const auto& c = cs.circles[k];
    if (c.free)
      f += dec[k] > 0 ? 1 : -1;
    else if (dec[k] > 0)
      ++i;
    else if (!c.marked)
      --i;
  }
  Grading g;
  int np = t.n_plus(), nm = t.n_minus();
  g.h = r.h - nm;
  g.q2 = 2 * r.h + i + 2 * f + 2 * np - 4 * nm;
  g.zeta4 = 4 * g.h - g.q2;
  return g;
}

std::string zeta_string(int zeta4) {
  int num = zeta4, den = 4;
  while (den > 1 && num % 2 == 0) num /= 2, den /= 2;
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace kh
