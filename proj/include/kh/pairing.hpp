#pragma once

// Box tensor of type A and type D structures, the totally twisted Khovanov
// complex of the glued diagram, and homology ranks.

#include <map>
#include <string>
#include <vector>

#include "kh/type_a.hpp"
#include "kh/type_d.hpp"

namespace kh {

struct ChainComplex {
  VarRegistry vars;
  std::vector<int> zeta4;
  // (rho_left, rho_right, decoration per global circle) as a canonical string
  std::vector<std::string> keys;
  std::vector<StateVec> d;

  std::size_t size() const { return zeta4.size(); }
  int find(const std::string& key) const;
};

// Left variables first, right ids shifted; repeated names throw VariableCollision.
VarRegistry merge_registries(const VarRegistry& left, const VarRegistry& right);

ChainComplex box_tensor(const TypeAStructure& a, const TypeDStructure& d);
ChainComplex twisted_khovanov(const TangleDiagram& left, const TangleDiagram& right, std::size_t max_states = 0);

// d^2 = 0 and every entry raises zeta by 1.
Report verify_complex(const ChainComplex& c);
// Pairs generators by key; gradings and differential entries must agree.
bool compare(const ChainComplex& a, const ChainComplex& b, std::string* why = nullptr);
// Nonzero ranks by four times zeta.
std::map<int, std::size_t> homology_ranks(const ChainComplex& c, const RankOptions& opt = {});

nlohmann::json to_json(const ChainComplex& c);
nlohmann::json ranks_json(const std::map<int, std::size_t>& ranks);

}  // namespace kh
