#include "kh/field.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "kh/gf64.hpp"

namespace kh {

const char* err_name(Err e) {
  switch (e) {
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::BadEvaluationPoint: return "BadEvaluationPoint";
    case Err::SubstitutionKillsDenominator: return "SubstitutionKillsDenominator";
    case Err::SchemaError: return "SchemaError";
    case Err::NonPlanarEvent: return "NonPlanarEvent";
    case Err::ClosedFreeComponent: return "ClosedFreeComponent";
    case Err::InactiveBridge: return "InactiveBridge";
    case Err::WordTooLong: return "WordTooLong";
    case Err::NonInvertiblePivot: return "NonInvertiblePivot";
    case Err::NeedsWordReduction: return "NeedsWordReduction";
    case Err::BoundaryMismatch: return "BoundaryMismatch";
    case Err::VariableCollision: return "VariableCollision";
    case Err::UnknownFixture: return "UnknownFixture";
    case Err::StateBudgetExceeded: return "StateBudgetExceeded";
  }
  return "Error";
}

Var VarRegistry::add(const std::string& name) {
  if (index_.count(name)) throw Error(Err::VariableCollision, "variable '" + name + "' already registered");
  Var v = static_cast<Var>(names_.size());
  names_.push_back(name);
  index_.emplace(name, v);
  return v;
}

std::optional<Var> VarRegistry::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(Var v, uint32_t p) {
  Monomial m;
  if (p) {
    m.e.push_back({v, p});
    m.deg = p;
  }
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.e.reserve(e.size() + o.e.size());
  std::size_t i = 0, j = 0;
  while (i < e.size() || j < o.e.size()) {
    if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
      r.e.push_back(e[i++]);
    } else if (i == e.size() || o.e[j].first < e[i].first) {
      r.e.push_back(o.e[j++]);
    } else {
      r.e.push_back({e[i].first, e[i].second + o.e[j].second});
      ++i, ++j;
    }
  }
  r.deg = deg + o.deg;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  std::size_t j = 0;
  for (auto [v, p] : e) {
    while (j < o.e.size() && o.e[j].first < v) ++j;
    if (j == o.e.size() || o.e[j].first != v || o.e[j].second < p) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  std::size_t j = 0;
  for (auto [v, p] : e) {
    uint32_t q = p;
    if (j < o.e.size() && o.e[j].first == v) q -= o.e[j++].second;
    if (q) r.e.push_back({v, q});
  }
  r.deg = deg - o.deg;
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < e.size() && j < o.e.size()) {
    if (e[i].first < o.e[j].first) {
      ++i;
    } else if (o.e[j].first < e[i].first) {
      ++j;
    } else {
      uint32_t p = std::min(e[i].second, o.e[j].second);
      r.e.push_back({e[i].first, p});
      r.deg += p;
      ++i, ++j;
    }
  }
  return r;
}

int Monomial::cmp(const Monomial& o) const {
  if (deg != o.deg) return deg < o.deg ? -1 : 1;
  std::size_t n = std::min(e.size(), o.e.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (e[k].first != o.e[k].first) return e[k].first < o.e[k].first ? 1 : -1;
    if (e[k].second != o.e[k].second) return e[k].second < o.e[k].second ? -1 : 1;
  }
  if (e.size() != o.e.size()) return e.size() < o.e.size() ? -1 : 1;
  return 0;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Monomial m) { t_.push_back(std::move(m)); }

Polynomial Polynomial::sum_of(const std::vector<Var>& vs) {
  Polynomial p;
  for (Var v : vs) p += Polynomial::var(v);
  return p;
}

Polynomial Polynomial::from_sorted(std::vector<Monomial> v) {
  // v sorted (not necessarily unique); equal pairs cancel
  Polynomial p;
  p.t_.reserve(v.size());
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i + 1;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1) p.t_.push_back(std::move(v[i]));
    i = j;
  }
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r;
  r.t_.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() && j < o.t_.size()) {
    int c = t_[i].cmp(o.t_[j]);
    if (c < 0) {
      r.t_.push_back(t_[i++]);
    } else if (c > 0) {
      r.t_.push_back(o.t_[j++]);
    } else {
      ++i, ++j;
    }
  }
  while (i < t_.size()) r.t_.push_back(t_[i++]);
  while (j < o.t_.size()) r.t_.push_back(o.t_[j++]);
  return r;
}

Polynomial Polynomial::operator*(const Monomial& m) const {
  Polynomial r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back(t * m);  // order preserved
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.t_.size() == 1) return *this * o.t_[0];
  if (t_.size() == 1) return o * t_[0];
  std::vector<Monomial> v;
  v.reserve(t_.size() * o.t_.size());
  for (const auto& a : t_)
    for (const auto& b : o.t_) v.push_back(a * b);
  std::sort(v.begin(), v.end());
  return from_sorted(std::move(v));
}

std::optional<Polynomial> Polynomial::divexact(const Polynomial& d) const {
  if (d.is_zero()) throw Error(Err::DivisionByZero, "polynomial division by 0");
  if (is_zero()) return Polynomial{};
  if (d.is_one()) return *this;
  if (t_.size() < d.t_.size() && d.t_.size() > 1 && t_.size() == 1) return std::nullopt;
  const Monomial& ld = d.leading();
  Polynomial r = *this, q;
  std::vector<Monomial> qs;
  while (!r.is_zero()) {
    const Monomial& lt = r.leading();
    if (!ld.divides(lt)) return std::nullopt;
    Monomial m = lt / ld;
    r += d * m;
    qs.push_back(std::move(m));
  }
  std::sort(qs.begin(), qs.end());
  return from_sorted(std::move(qs));
}

Monomial Polynomial::content() const {
  if (t_.empty()) return {};
  Monomial g = t_[0];
  for (std::size_t i = 1; i < t_.size() && !g.is_one(); ++i) g = g.gcd(t_[i]);
  return g;
}

Polynomial Polynomial::div_monomial(const Monomial& m) const {
  if (m.is_one()) return *this;
  Polynomial r;
  r.t_.reserve(t_.size());
  for (const auto& t : t_) r.t_.push_back(t / m);
  return r;
}

std::size_t Polynomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& m : t_) {
    for (auto [v, p] : m.e) {
      h ^= (static_cast<std::size_t>(v) << 20) ^ p;
      h *= 0x100000001b3ULL;
    }
    h ^= 0x9e3779b97f4a7c15ULL;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// -------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial n) : num_(std::move(n)), den_(Polynomial::one()) {}

RationalFunction::RationalFunction(Polynomial n, Polynomial d) : num_(std::move(n)), den_(std::move(d)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw Error(Err::DivisionByZero, "zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::one();
    return;
  }
  if (den_.is_one()) return;
  Monomial g = num_.content().gcd(den_.content());
  if (!g.is_one()) {
    num_ = num_.div_monomial(g);
    den_ = den_.div_monomial(g);
  }
  if (num_ == den_) {
    num_ = den_ = Polynomial::one();
    return;
  }
  if (num_.leading().deg >= den_.leading().deg) {
    if (auto q = num_.divexact(den_)) {
      num_ = std::move(*q);
      den_ = Polynomial::one();
      return;
    }
  } else if (auto q = den_.divexact(num_)) {
    den_ = std::move(*q);
    num_ = Polynomial::one();
  }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  if (o.den_.is_one()) return RationalFunction(num_ + o.num_ * den_, den_);
  if (den_.is_one()) return RationalFunction(num_ * o.den_ + o.num_, o.den_);
  if (den_.size() <= o.den_.size()) {
    if (auto k = o.den_.divexact(den_)) return RationalFunction(num_ * *k + o.num_, o.den_);
  } else if (auto k = den_.divexact(o.den_)) {
    return RationalFunction(num_ + o.num_ * *k, den_);
  }
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (is_one()) return o;
  if (o.is_one()) return *this;
  // cancel crosswise when cheap
  if (num_ == o.den_) return RationalFunction(o.num_, den_);
  if (den_ == o.num_) return RationalFunction(num_, o.den_);
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::inv() const {
  if (is_zero()) throw Error(Err::DivisionByZero, "inverse of 0");
  RationalFunction r;
  r.num_ = den_;
  r.den_ = num_;
  return r;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

// -------------------------------------------------------------------- text

std::string to_string(const Monomial& m, const VarRegistry* reg) {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.e.size(); ++i) {
    if (i) s += '*';
    auto [v, p] = m.e[i];
    s += reg && v < reg->size() ? reg->name(v) : "v" + std::to_string(v);
    if (p > 1) s += "^" + std::to_string(p);
  }
  return s;
}

std::string to_string(const Polynomial& p, const VarRegistry* reg) {
  if (p.is_zero()) return "0";
  std::vector<const Monomial*> ms;
  for (const auto& m : p.terms()) ms.push_back(&m);
  std::sort(ms.begin(), ms.end(), [](const Monomial* a, const Monomial* b) { return a->e < b->e; });
  std::string s;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) s += '+';
    s += to_string(*ms[i], reg);
  }
  return s;
}

std::string to_string(const RF& a, const VarRegistry* reg) {
  if (a.den().is_one()) return to_string(a.num(), reg);
  return to_string(a.num(), reg) + " / " + to_string(a.den(), reg);
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char c) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == c) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Polynomial parse_polynomial(const std::string& text, const VarRegistry& reg) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  Polynomial p;
  if (s == "0") return p;
  for (const auto& mt : split(s, '+')) {
    Monomial m;
    for (const auto& f0 : split(trim(mt), '*')) {
      std::string f = trim(f0);
      if (f.empty()) throw Error(Err::SchemaError, "empty factor in '" + text + "'");
      if (f == "1") continue;
      uint32_t e = 1;
      auto caret = f.find('^');
      if (caret != std::string::npos) {
        e = static_cast<uint32_t>(std::stoul(f.substr(caret + 1)));
        f = trim(f.substr(0, caret));
      }
      auto v = reg.find(f);
      if (!v) throw Error(Err::SchemaError, "unknown variable '" + f + "'");
      m = m * Monomial::var(*v, e);
    }
    p += Polynomial(m);
  }
  return p;
}

RF parse_rf(const std::string& s, const VarRegistry& reg) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return RF(parse_polynomial(s, reg));
  return RF(parse_polynomial(s.substr(0, slash), reg), parse_polynomial(s.substr(slash + 1), reg));
}

// ------------------------------------------------------------ substitution

Polynomial Substitution::apply(const Polynomial& p) const {
  std::map<std::pair<Var, uint32_t>, Polynomial> pw;
  auto power = [&](Var v, uint32_t e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = pw.find(key);
    if (it != pw.end()) return it->second;
    auto a = map_.find(v);
    Polynomial base = a == map_.end() ? Polynomial::var(v) : a->second;
    Polynomial r = Polynomial::one();
    for (uint32_t k = 0; k < e; ++k) r = r * base;
    return pw.emplace(key, std::move(r)).first->second;
  };
  Polynomial out;
  for (const auto& m : p.terms()) {
    Polynomial t = Polynomial::one();
    for (auto [v, e] : m.e) t = t * power(v, e);
    out += t;
  }
  return out;
}

Substitution Substitution::then(const Substitution& s2) const {
  Substitution r;
  for (const auto& [v, p] : map_) r.map_[v] = s2.apply(p);
  for (const auto& [v, p] : s2.map_)
    if (!map_.count(v)) r.map_[v] = p;
  return r;
}

Polynomial substitute(const Polynomial& p, const Substitution& s) { return s.apply(p); }

RF substitute(const RF& a, const Substitution& s) {
  Polynomial d = s.apply(a.den());
  if (d.is_zero()) throw Error(Err::SubstitutionKillsDenominator, "denominator maps to 0");
  return RF(s.apply(a.num()), d);
}

// ---------------------------------------------------------------- eval_ext

uint64_t eval_ext(const Polynomial& p, const std::vector<uint64_t>& point) {
  uint64_t acc = 0;
  for (const auto& m : p.terms()) {
    uint64_t t = 1;
    for (auto [v, e] : m.e) {
      if (v >= point.size()) throw Error(Err::BadEvaluationPoint, "no value for variable " + std::to_string(v));
      t = gf64::mul(t, e == 1 ? point[v] : gf64::pow(point[v], e));
    }
    acc ^= t;
  }
  return acc;
}

uint64_t eval_ext(const RF& a, const std::vector<uint64_t>& point) {
  uint64_t d = eval_ext(a.den(), point);
  if (d == 0) throw Error(Err::BadEvaluationPoint, "denominator vanishes at the evaluation point");
  uint64_t n = eval_ext(a.num(), point);
  if (a.den().is_one()) return n;
  return gf64::mul(n, gf64::inv(d));
}

// -------------------------------------------------------------------- rank

std::size_t rank_gf64(std::vector<uint64_t>& a, std::size_t rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    uint64_t pinv = gf64::inv(a[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      uint64_t f = a[i * cols + c];
      if (!f) continue;
      gf64::axpy(&a[i * cols + c], &a[r * cols + c], gf64::mul(f, pinv), cols - c);
    }
    ++r;
  }
  return r;
}

namespace {

Var max_var(const Matrix& m) {
  Var mx = 0;
  bool any = false;
  for (const auto& row : m)
    for (const auto& x : row)
      for (const Polynomial* p : {&x.num(), &x.den()})
        for (const auto& t : p->terms())
          for (auto [v, e] : t.e) {
            mx = std::max(mx, v);
            any = true;
          }
  return any ? mx + 1 : 0;
}

std::size_t rank_randomized(const Matrix& m, const RankOptions& opt) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  if (!rows || !cols) return 0;
  std::mt19937_64 rng(opt.seed);
  Var nv = max_var(m);
  std::size_t best = 0;
  int failures = 0;
  for (int t = 0; t < opt.trials;) {
    std::vector<uint64_t> pt(nv);
    for (auto& x : pt) x = rng();
    std::vector<uint64_t> a(rows * cols);
    try {
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m[i][j].is_zero() ? 0 : eval_ext(m[i][j], pt);
    } catch (const Error& e) {
      if (e.kind() != Err::BadEvaluationPoint || ++failures > opt.retries) throw;
      continue;
    }
    best = std::max(best, rank_gf64(a, rows, cols));
    ++t;
  }
  return best;
}

std::size_t rank_exact(const Matrix& m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  if (!rows || !cols) return 0;
  // clear denominators row by row; row scaling keeps the rank
  std::vector<std::vector<Polynomial>> a(rows, std::vector<Polynomial>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Polynomial l = Polynomial::one();
    for (const auto& x : m[i]) {
      if (x.is_zero() || x.den().is_one()) continue;
      if (!l.divexact(x.den())) l = l * x.den();
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const RF& x = m[i][j];
      if (x.is_zero()) continue;
      a[i][j] = x.num() * *l.divexact(x.den());
    }
  }
  Polynomial prev = Polynomial::one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Polynomial v = a[r][c] * a[i][j] + a[i][c] * a[r][j];
        auto q = v.divexact(prev);
        if (!q) throw Error(Err::DivisionByZero, "fraction-free elimination lost exactness");
        a[i][j] = std::move(*q);
      }
      a[i][c] = Polynomial{};
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const Matrix& m, const RankOptions& opt) {
  return opt.mode == RankMode::Exact ? rank_exact(m) : rank_randomized(m, opt);
}

}  // namespace kh
