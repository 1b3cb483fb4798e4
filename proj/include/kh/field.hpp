#pragma once

// Fraction field of GF(2)[x_1..x_k]. No GCD reduction: equality is by
// cross-multiplication and fractions are only trimmed of monomial content
// and obvious exact quotients.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kh/error.hpp"

namespace kh {

using Var = uint32_t;

class VarRegistry {
 public:
  // Throws VariableCollision on a repeated name.
  Var add(const std::string& name);
  std::optional<Var> find(const std::string& name) const;
  const std::string& name(Var v) const { return names_.at(v); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> index_;
};

struct Monomial {
  std::vector<std::pair<Var, uint32_t>> e;  // sorted by variable, exponents > 0
  uint32_t deg = 0;

  static Monomial var(Var v, uint32_t p = 1);
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  bool is_one() const { return e.empty(); }
  bool operator==(const Monomial& o) const { return e == o.e; }
  // graded lex, smaller variable ids more significant
  int cmp(const Monomial& o) const;
  bool operator<(const Monomial& o) const { return cmp(o) < 0; }
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Monomial m);
  static Polynomial one() { return Polynomial(Monomial{}); }
  static Polynomial var(Var v) { return Polynomial(Monomial::var(v)); }
  static Polynomial sum_of(const std::vector<Var>& vs);

  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return t_.size() == 1 && t_[0].is_one(); }
  const std::vector<Monomial>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  const Monomial& leading() const { return t_.back(); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Monomial& m) const;
  bool operator==(const Polynomial& o) const { return t_ == o.t_; }

  // Exact quotient, or nullopt when d does not divide *this.
  std::optional<Polynomial> divexact(const Polynomial& d) const;
  Monomial content() const;
  Polynomial div_monomial(const Monomial& m) const;
  std::size_t hash() const;

 private:
  static Polynomial from_sorted(std::vector<Monomial> v);
  std::vector<Monomial> t_;  // strictly increasing
};

class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::one()) {}
  RationalFunction(Polynomial n);  // NOLINT: polynomials embed
  RationalFunction(Polynomial n, Polynomial d);
  static RationalFunction one() { return RationalFunction(Polynomial::one()); }
  static RationalFunction var(Var v) { return RationalFunction(Polynomial::var(v)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction operator-(const RationalFunction& o) const { return *this + o; }
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction inv() const;
  RationalFunction operator/(const RationalFunction& o) const { return *this * o.inv(); }
  bool operator==(const RationalFunction& o) const;
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

 private:
  void normalize();
  Polynomial num_, den_;
};

using RF = RationalFunction;

inline RF add(const RF& a, const RF& b) { return a + b; }
inline RF mul(const RF& a, const RF& b) { return a * b; }
inline RF inv(const RF& a) { return a.inv(); }
inline bool is_zero(const RF& a) { return a.is_zero(); }

// Canonical text: '+' between monomials, '*' between variables, '^' for
// exponents, monomials sorted by (variable id, exponent) sequences.
std::string to_string(const Monomial& m, const VarRegistry* reg = nullptr);
std::string to_string(const Polynomial& p, const VarRegistry* reg = nullptr);
std::string to_string(const RF& a, const VarRegistry* reg = nullptr);
// Inverse of to_string; unknown names are a SchemaError.
Polynomial parse_polynomial(const std::string& s, const VarRegistry& reg);
RF parse_rf(const std::string& s, const VarRegistry& reg);

class Substitution {
 public:
  Substitution() = default;
  void set(Var v, Polynomial p) { map_[v] = std::move(p); }
  const std::map<Var, Polynomial>& assignment() const { return map_; }
  // Variables without an assignment map to themselves.
  Polynomial apply(const Polynomial& p) const;
  // Then s2 after *this.
  Substitution then(const Substitution& s2) const;

 private:
  std::map<Var, Polynomial> map_;
};

Polynomial substitute(const Polynomial& p, const Substitution& s);
RF substitute(const RF& a, const Substitution& s);

// Evaluation into GF(2^64); point[v] is the value of variable v.
uint64_t eval_ext(const Polynomial& p, const std::vector<uint64_t>& point);
uint64_t eval_ext(const RF& a, const std::vector<uint64_t>& point);

enum class RankMode { Exact, Randomized };

using Matrix = std::vector<std::vector<RF>>;

struct RankOptions {
  RankMode mode = RankMode::Exact;
  uint64_t seed = 0x5eed;
  int trials = 2;    // randomized: best of this many points
  int retries = 16;  // randomized: fresh points after a vanishing denominator
};

std::size_t rank(const Matrix& m, const RankOptions& opt = {});
inline std::size_t rank(const Matrix& m, RankMode mode, uint64_t seed = 0x5eed) {
  RankOptions o;
  o.mode = mode;
  o.seed = seed;
  return rank(m, o);
}

// Rank over GF(2^64) of an already evaluated row-major matrix (destroyed).
std::size_t rank_gf64(std::vector<uint64_t>& a, std::size_t rows, std::size_t cols);

}  // namespace kh
