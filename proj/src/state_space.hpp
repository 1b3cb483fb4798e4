#pragma once

// Shared enumeration of (other matching, resolution, decoration) states.

#include <algorithm>
#include <map>
#include <vector>

#include "kh/cleaved.hpp"
#include "kh/type_d.hpp"

namespace kh::detail {

struct StateSpace {
  const TangleDiagram& t;
  std::vector<PlanarMatching> matchings;
  std::vector<Resolved> res;
  std::map<std::pair<int, ResolutionMask>, CircleSet> circle_cache;

  std::vector<DState> states;
  std::map<DState, int> index;
  std::vector<LinkId> boundary;
  std::vector<int> zeta4;
  std::vector<int> n_cleaved;
  std::vector<std::vector<int>> circle_key;

  explicit StateSpace(const TangleDiagram& tt) : t(tt) {}

  const CircleSet& circles(const PlanarMatching& m, ResolutionMask rho) {
    int mi = static_cast<int>(std::find(matchings.begin(), matchings.end(), m) - matchings.begin());
    auto key = std::make_pair(mi, rho);
    auto it = circle_cache.find(key);
    if (it != circle_cache.end()) return it->second;
    return circle_cache[key] = resolve(t, res[rho], m);
  }

  LinkId link(const PlanarMatching& other, const PlanarMatching& own, const Decoration& dec, int nc) {
    Decoration s(dec.begin(), dec.begin() + nc);
    return t.side == Side::Right ? algebra(t.n).intern(other, own, s) : algebra(t.n).intern(own, other, s);
  }

  void build(std::size_t max_states) {
    if (t.num_crossings() > 24) throw Error(Err::StateBudgetExceeded, "too many crossings");
    matchings = enumerate_matchings(t.n);
    ResolutionMask nr = ResolutionMask(1) << t.num_crossings();
    for (ResolutionMask rho = 0; rho < nr; ++rho) res.push_back(resolve_tangle(t, rho));
    for (auto& m : matchings)
      for (ResolutionMask rho = 0; rho < nr; ++rho) {
        const CircleSet& cs = circles(m, rho);
        int k = static_cast<int>(cs.circles.size());
        for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
          if ((mask >> cs.marked) & 1) continue;
          DState s{m, rho, Decoration(k)};
          for (int c = 0; c < k; ++c) s.dec[c] = ((mask >> c) & 1) ? 1 : -1;
          index[s] = static_cast<int>(states.size());
          states.push_back(s);
          n_cleaved.push_back(cs.n_cleaved);
          circle_key.push_back(keys(cs));
          boundary.push_back(link(m, res[rho].m, s.dec, cs.n_cleaved));
          zeta4.push_back(state_grading(t, res[rho], cs, s.dec).zeta4);
          if (max_states && states.size() > max_states)
            throw Error(Err::StateBudgetExceeded, "more than " + std::to_string(max_states) + " states");
        }
      }
  }

  static std::vector<int> keys(const CircleSet& cs) {
    std::vector<int> out;
    for (auto& c : cs.circles)
      out.push_back(c.free ? -(1 + c.sig.front()) : *std::min_element(c.points.begin(), c.points.end()));
    return out;
  }

  int target(const DState& s) const {
    auto it = index.find(s);
    if (it == index.end()) throw Error(Err::SchemaError, "surgery leaves the state space: " + to_string(s));
    return it->second;
  }

  // Generator joining the boundaries of a resolution move: -1 for the idempotent.
  GenId connect(LinkId from, LinkId to, const SurgeryOutcome& out) {
    Algebra& A = algebra(t.n);
    if (out.effect == BoundaryEffect::ChangesMatching) {
      GenId g = A.bridge(from, to, *out.induced);
      if (g < 0) throw Error(Err::SchemaError, "no bridge generator for " + to_string(*out.induced));
      return g;
    }
    if (from == to) return -1;
    const auto& L = A.link(from);
    GenKind k = t.side == Side::Right ? GenKind::RightDec : GenKind::LeftDec;
    for (int c = 0; c < static_cast<int>(L.sigma.size()); ++c)
      if (L.sigma[c] > 0 && A.flip(from, c) == to) return A.dec(k, from, c);
    throw Error(Err::SchemaError, "resolution move changes the boundary by more than one flip");
  }
};

}  // namespace kh::detail
