#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tcad/rational.hpp"
#include "tcad/var_order.hpp"

namespace tcad {

/// Multivariate polynomial over Q, stored recursively by main variable.
///
/// A non-constant polynomial of main variable x_v is the list of its
/// coefficients c_0..c_d in Q[x_1..x_{v-1}], with c_d != 0. Variables are
/// identified by their 0-based index in a VarOrder; the level of a
/// polynomial is index+1, and 0 for constants. Values are immutable and
/// cheap to copy.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: implicit constant promotion
    if (c != 0) rep_ = make_constant(c);
  }
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  Polynomial(int c) : Polynomial(Rational(c)) {}   // NOLINT

  static Polynomial variable(int var) {
    return from_coefficients(var, {Polynomial(), Polynomial(1)});
  }

  /// c * x_var^deg, with c free of variables >= var.
  static Polynomial monomial(int var, unsigned deg, const Polynomial& c) {
    if (c.is_zero()) return {};
    std::vector<Polynomial> coeffs(deg + 1);
    coeffs[deg] = c;
    return from_coefficients(var, std::move(coeffs));
  }

  /// Builds sum coeffs[i] x_var^i where every coefficient is free of x_var and above.
  static Polynomial from_coefficients(int var, std::vector<Polynomial> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) return {};
    if (coeffs.size() == 1) return coeffs[0];
    for (const auto& c : coeffs) {
      if (c.var() >= var) throw std::logic_error("coefficient involves the main variable");
    }
    Polynomial p;
    auto rep = std::make_shared<Rep>();
    rep->var = var;
    rep->coeffs = std::move(coeffs);
    rep->hash = compute_hash(*rep);
    p.rep_ = std::move(rep);
    return p;
  }

  /// Builds sum coeffs[i] x_var^i for arbitrary coefficients.
  static Polynomial from_univariate(int var, const std::vector<Polynomial>& coeffs) {
    bool simple = std::all_of(coeffs.begin(), coeffs.end(),
                              [var](const Polynomial& c) { return c.var() < var; });
    if (simple) return from_coefficients(var, coeffs);
    Polynomial x = variable(var);
    Polynomial acc;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  }

  bool is_zero() const { return !rep_; }
  bool is_constant() const { return !rep_ || rep_->var < 0; }
  bool is_one() const { return is_constant() && !is_zero() && rep_->value == 1; }
  /// Non-constant with constant coefficients in its main variable.
  bool is_univariate() const {
    if (is_constant()) return false;
    for (const auto& c : rep_->coeffs) {
      if (!c.is_constant()) return false;
    }
    return true;
  }

  /// Value of a constant polynomial.
  Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return rep_ ? rep_->value : Rational(0);
  }

  /// Index of the main variable, -1 for constants.
  int var() const { return rep_ ? rep_->var : -1; }
  int level() const { return var() + 1; }

  unsigned mdeg() const {
    require_nonconstant();
    return static_cast<unsigned>(rep_->coeffs.size() - 1);
  }

  /// Coefficients w.r.t. the main variable, lowest degree first.
  const std::vector<Polynomial>& coefficients() const {
    require_nonconstant();
    return rep_->coeffs;
  }

  Polynomial mvar() const { return variable(var_or_throw()); }

  const Polynomial& init() const {
    require_nonconstant();
    return rep_->coeffs.back();
  }

  /// p - init(p) * mvar^mdeg
  Polynomial tail() const {
    require_nonconstant();
    std::vector<Polynomial> c(rep_->coeffs.begin(), rep_->coeffs.end() - 1);
    return from_coefficients(rep_->var, std::move(c));
  }

  /// Derivative w.r.t. the main variable.
  Polynomial der() const { return derivative(var_or_throw()); }

  unsigned degree(int v) const {
    if (var() < v) return 0;
    if (var() == v) return mdeg();
    unsigned d = 0;
    for (const auto& c : rep_->coeffs) d = std::max(d, c.degree(v));
    return d;
  }

  Polynomial coeff(int v, unsigned i) const {
    if (var() < v) return i == 0 ? *this : Polynomial();
    if (var() == v) return i < rep_->coeffs.size() ? rep_->coeffs[i] : Polynomial();
    std::vector<Polynomial> c;
    c.reserve(rep_->coeffs.size());
    for (const auto& x : rep_->coeffs) c.push_back(x.coeff(v, i));
    return from_coefficients(rep_->var, std::move(c));
  }

  Polynomial lc(int v) const { return coeff(v, degree(v)); }

  /// Coefficients w.r.t. an arbitrary variable v; they may involve variables above v.
  std::vector<Polynomial> to_univariate(int v) const {
    if (var() < v) return {*this};
    if (var() == v) return rep_->coeffs;
    unsigned d = degree(v);
    std::vector<Polynomial> out;
    out.reserve(d + 1);
    for (unsigned i = 0; i <= d; ++i) out.push_back(coeff(v, i));
    return out;
  }

  Polynomial derivative(int v) const {
    if (var() < v) return {};
    std::vector<Polynomial> c;
    if (var() == v) {
      for (std::size_t i = 1; i < rep_->coeffs.size(); ++i) {
        c.push_back(rep_->coeffs[i].scaled(Rational(static_cast<long>(i))));
      }
      return from_univariate(v, c);
    }
    for (const auto& x : rep_->coeffs) c.push_back(x.derivative(v));
    return from_coefficients(rep_->var, std::move(c));
  }

  /// Replaces x_v by a rational value.
  Polynomial substitute(int v, const Rational& value) const {
    if (var() < v) return *this;
    const auto& cs = rep_->coeffs;
    if (var() == v) {
      Polynomial acc;
      for (std::size_t i = cs.size(); i-- > 0;) acc = acc.scaled(value) + cs[i];
      return acc;
    }
    std::vector<Polynomial> c;
    c.reserve(cs.size());
    for (const auto& x : cs) c.push_back(x.substitute(v, value));
    return from_coefficients(rep_->var, std::move(c));
  }

  /// Evaluates at point (point[i] is the value of x_{i+1}); point must cover the level.
  Rational evaluate(const std::vector<Rational>& point) const {
    return evaluate_as<Rational>(point, [](const Rational& r) { return r; });
  }

  /// Horner evaluation over any ring T given a conversion from Q.
  template <class T, class Conv>
  T evaluate_as(const std::vector<T>& point, Conv&& conv) const {
    if (is_constant()) return conv(constant_value());
    if (static_cast<std::size_t>(var()) >= point.size()) {
      throw std::invalid_argument("evaluation point does not cover the polynomial's variables");
    }
    const auto& cs = rep_->coeffs;
    const T& x = point[static_cast<std::size_t>(var())];
    T acc = cs.back().evaluate_as<T>(point, conv);
    for (std::size_t i = cs.size() - 1; i-- > 0;) {
      acc = acc * x + cs[i].evaluate_as<T>(point, conv);
    }
    return acc;
  }

  /// Lexicographically leading numeric coefficient (0 for the zero polynomial).
  Rational leading_numeric() const {
    const Polynomial* p = this;
    while (!p->is_constant()) p = &p->init();
    return p->constant_value();
  }

  /// Visits every numeric coefficient.
  void for_each_numeric(const std::function<void(const Rational&)>& fn) const {
    if (is_zero()) return;
    if (is_constant()) {
      fn(rep_->value);
      return;
    }
    for (const auto& c : rep_->coeffs) c.for_each_numeric(fn);
  }

  using Exponents = std::vector<unsigned>;

  /// Distributed terms in descending lexicographic order (x_n most significant).
  std::vector<std::pair<Exponents, Rational>> terms(std::size_t nvars) const {
    std::vector<std::pair<Exponents, Rational>> out;
    Exponents e(std::max<std::size_t>(nvars, static_cast<std::size_t>(level())), 0);
    collect_terms(e, out);
    return out;
  }

  std::size_t total_degree() const {
    std::size_t best = 0;
    for (const auto& [e, c] : terms(static_cast<std::size_t>(level()))) {
      std::size_t s = 0;
      for (unsigned x : e) s += x;
      best = std::max(best, s);
    }
    return best;
  }

  std::size_t hash() const { return rep_ ? rep_->hash : 0x9e3779b97f4a7c15ULL; }

  /// Total order: by main variable, then degree, then coefficients top-down.
  int compare(const Polynomial& o) const {
    if (rep_ == o.rep_) return 0;
    if (var() != o.var()) return var() < o.var() ? -1 : 1;
    if (is_constant()) {
      int c = cmp(constant_value(), o.constant_value());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    const auto& a = rep_->coeffs;
    const auto& b = o.rep_->coeffs;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
      int c = a[i].compare(b[i]);
      if (c != 0) return c;
    }
    return 0;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.rep_ == b.rep_) return true;
    if (a.hash() != b.hash()) return false;
    return a.compare(b) == 0;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  friend bool operator<(const Polynomial& a, const Polynomial& b) { return a.compare(b) < 0; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int va = a.var(), vb = b.var();
    if (va < 0 && vb < 0) return Polynomial(Rational(a.rep_->value + b.rep_->value));
    if (va == vb) {
      const auto& x = a.rep_->coeffs;
      const auto& y = b.rep_->coeffs;
      std::vector<Polynomial> c(std::max(x.size(), y.size()));
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < x.size() && i < y.size()) {
          c[i] = x[i] + y[i];
        } else {
          c[i] = i < x.size() ? x[i] : y[i];
        }
      }
      return from_coefficients(va, std::move(c));
    }
    const Polynomial& hi = va > vb ? a : b;
    const Polynomial& lo = va > vb ? b : a;
    std::vector<Polynomial> c = hi.rep_->coeffs;
    c[0] = c[0] + lo;
    return from_coefficients(hi.var(), std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a) { return a.scaled(Rational(-1)); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  Polynomial scaled(const Rational& s) const {
    if (is_zero() || s == 0) return {};
    if (s == 1) return *this;
    if (is_constant()) return Polynomial(Rational(rep_->value * s));
    std::vector<Polynomial> c;
    c.reserve(rep_->coeffs.size());
    for (const auto& x : rep_->coeffs) c.push_back(x.scaled(s));
    return from_coefficients(var(), std::move(c));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (b.is_constant()) return a.scaled(b.rep_->value);
    if (a.is_constant()) return b.scaled(a.rep_->value);
    int va = a.var(), vb = b.var();
    if (va == vb) {
      const auto& x = a.rep_->coeffs;
      const auto& y = b.rep_->coeffs;
      std::vector<Polynomial> c(x.size() + y.size() - 1);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
          if (y[j].is_zero()) continue;
          c[i + j] = c[i + j] + x[i] * y[j];
        }
      }
      return from_coefficients(va, std::move(c));
    }
    const Polynomial& hi = va > vb ? a : b;
    const Polynomial& lo = va > vb ? b : a;
    std::vector<Polynomial> c;
    c.reserve(hi.rep_->coeffs.size());
    for (const auto& x : hi.rep_->coeffs) c.push_back(x * lo);
    return from_coefficients(hi.var(), std::move(c));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned e) const {
    Polynomial result(1), base = *this;
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  std::string to_string(const VarOrder& order) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms(order.size())) {
      Rational mag = abs(c);
      bool unit = mag == 1;
      bool has_vars = std::any_of(e.begin(), e.end(), [](unsigned x) { return x > 0; });
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool need_star = false;
      if (!unit || !has_vars) {
        os << mag.get_str();
        need_star = true;
      }
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (need_star) os << '*';
        os << (i < order.size() ? order.name(static_cast<int>(i)) : "x" + std::to_string(i + 1));
        if (e[i] > 1) os << '^' << e[i];
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  struct Rep {
    int var = -1;
    Rational value;
    std::vector<Polynomial> coeffs;
    std::size_t hash = 0;
  };

  static std::shared_ptr<const Rep> make_constant(const Rational& c) {
    auto rep = std::make_shared<Rep>();
    rep->value = c;
    rep->hash = compute_hash(*rep);
    return rep;
  }

  static std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }

  static std::size_t compute_hash(const Rep& r) {
    if (r.var < 0) {
      std::size_t h = 17;
      for (mpz_srcptr z : {r.value.get_num_mpz_t(), r.value.get_den_mpz_t()}) {
        h = mix(h, static_cast<std::size_t>(mpz_sgn(z) + 1));
        for (std::size_t i = 0; i < mpz_size(z); ++i) {
          h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z, static_cast<mp_size_t>(i))));
        }
      }
      return h;
    }
    std::size_t h = static_cast<std::size_t>(r.var) * 1000003ULL + r.coeffs.size();
    for (const auto& c : r.coeffs) h = mix(h, c.hash());
    return h;
  }

  void collect_terms(Exponents& e, std::vector<std::pair<Exponents, Rational>>& out) const {
    if (is_zero()) return;
    if (is_constant()) {
      out.emplace_back(e, rep_->value);
      return;
    }
    auto v = static_cast<std::size_t>(rep_->var);
    for (std::size_t i = rep_->coeffs.size(); i-- > 0;) {
      e[v] = static_cast<unsigned>(i);
      rep_->coeffs[i].collect_terms(e, out);
    }
    e[v] = 0;
  }

  void require_nonconstant() const {
    if (is_constant()) throw std::domain_error("constant polynomial has no main variable");
  }
  int var_or_throw() const {
    require_nonconstant();
    return rep_->var;
  }

  std::shared_ptr<const Rep> rep_;
};

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

}  // namespace tcad
