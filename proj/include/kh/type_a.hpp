#pragma once

// Twisted type A structure of a left tangle: m1 and the generator actions m2.

#include <map>
#include <string>
#include <vector>

#include "kh/type_d.hpp"

namespace kh {

// (right matching, resolution of the left tangle, decorations)
using AState = DState;
// F-linear combination of states
using StateVec = std::map<int, RF>;

struct TypeAStructure {
  int n = 1;
  VarRegistry vars;
  std::vector<AState> states;
  std::vector<LinkId> boundary;
  std::vector<int> zeta4;
  std::vector<int> n_cleaved;
  // per state and circle: lowest axis point of a cleaved circle, -(1 + lowest arc) of a free one
  std::vector<std::vector<int>> circle_key;
  std::map<AState, int> index;
  std::vector<StateVec> m1;
  std::vector<std::map<GenId, StateVec>> act;  // non-idempotent generators from the state's boundary

  int find(const AState& s) const;
  Algebra& alg() const { return algebra(n); }
};

std::vector<AState> build_states_a(const TangleDiagram& t, std::size_t max_states = 0);
TypeAStructure build_type_a(const TangleDiagram& t, std::size_t max_states = 0);

StateVec act_generator(const TypeAStructure& a, int state, GenId g);
// Idempotent words project; words longer than 2 throw WordTooLong.
StateVec act_word(const TypeAStructure& a, int state, const Word& w, LinkId src);
StateVec act_word(const TypeAStructure& a, const StateVec& x, const Word& w, LinkId src);
StateVec act(const TypeAStructure& a, const StateVec& x, const AlgebraElement& e);
StateVec apply_m1(const TypeAStructure& a, const StateVec& x);

// m1 m1 = 0, the mixed relation for each generator, and relation instances act by zero.
Report verify_Ainf(const TypeAStructure& a);
// m1 raises zeta by 1; a generator g shifts zeta by zeta(g).
Report verify_grading(const TypeAStructure& a);

nlohmann::json to_json(const TypeAStructure& a);

}  // namespace kh
