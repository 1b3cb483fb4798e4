#pragma once

// Moving a weight w across a crossing c and the morphisms relating the two
// type D structures.

#include <memory>
#include <utility>
#include <vector>

#include "kh/type_d.hpp"

namespace kh {

struct WeightMove {
  int crossing = 0;
  std::pair<Port, Port> ports{InLo, OutHi};  // the two arcs at c that receive w
  Polynomial w;
  TangleDiagram source, target;
};

// target = source with w added to the arcs at the two ports of c.
WeightMove make_weight_move(const TangleDiagram& t, int crossing, Port a, Port b, const Polynomial& w);
// All six unordered port pairs. The last two are the diagonal ones, i.e. the
// two halves of a strand through c; those are the moves that give morphisms.
std::vector<std::pair<Port, Port>> port_pairs();
std::vector<std::pair<Port, Port>> diagonal_port_pairs();
const char* port_name(Port p);

// Reverse surgery at c: states with rho(c) = 1 go to rho(c) = 0. from and to
// are the structures of the two diagrams of the move (either direction).
DMorphism build_Dc(const WeightMove& move, const TypeDStructure& from, const TypeDStructure& to);
// I + w * Dc
DMorphism build_Psi(const WeightMove& move, const TypeDStructure& from, const TypeDStructure& to);
DMorphism build_Phi(const WeightMove& move, const TypeDStructure& from, const TypeDStructure& to);

struct WeightMoveMaps {
  std::shared_ptr<const TypeDStructure> d_source, d_target;
  DMorphism psi;  // source -> target
  DMorphism phi;  // target -> source
};
WeightMoveMaps weight_move_maps(const WeightMove& move, std::size_t max_states = 0);

struct WeightMoveReport {
  bool psi_morphism = false, phi_morphism = false;
  bool phi_psi_identity = false, psi_phi_identity = false;
  std::vector<std::string> failures;
  bool ok() const { return psi_morphism && phi_morphism && phi_psi_identity && psi_phi_identity; }
};
WeightMoveReport check_weight_move(const WeightMove& move, std::size_t max_states = 0);

nlohmann::json to_json(const WeightMoveReport& r);

}  // namespace kh
