#pragma once

#include <span>
#include <string>
#include <utility>

#include "nugrass/errors.hpp"
#include "nugrass/poly.hpp"
#include "nugrass/rational.hpp"

namespace nugrass {

/// Rational function num/den in the even coordinates x1..xN.
///
/// The denominator is kept monic (leading grlex coefficient 1) and common
/// monomial factors are stripped. Beyond that the fraction may stay unreduced:
/// equality is decided by cross-multiplication, so no multivariate gcd is
/// needed for correctness. Cheap exact-division checks cancel the common cases.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(Poly::constant(0, 1)) {}
  explicit RatFunc(std::size_t nvars) : num_(nvars), den_(Poly::constant(nvars, 1)) {}
  explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.nvars(), 1)) {}

  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_.nvars() != den_.nvars()) fail(ErrorCode::ContextMismatch, "numerator/denominator variable count");
    if (den_.is_zero()) fail(ErrorCode::ZeroInverse, "zero denominator");
    normalize();
  }

  static RatFunc constant(std::size_t nvars, const Rat& c) { return RatFunc(Poly::constant(nvars, c)); }
  static RatFunc variable(std::size_t nvars, std::size_t i) { return RatFunc(Poly::variable(nvars, i)); }

  std::size_t nvars() const { return num_.nvars(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  RatFunc operator+(const RatFunc& o) const { return add(o, false); }
  RatFunc operator-(const RatFunc& o) const { return add(o, true); }

  RatFunc operator*(const RatFunc& o) const {
    check_context(o);
    if (is_zero() || o.is_zero()) return RatFunc(nvars());
    Poly n1 = num_, d1 = den_, n2 = o.num_, d2 = o.den_;
    cancel(n1, d2);
    cancel(n2, d1);
    return from_parts(n1 * n2, d1 * d2);
  }

  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc scaled(const Rat& c) const {
    if (c == 0) return RatFunc(nvars());
    RatFunc r = *this;
    r.num_ = r.num_.scaled(c);
    return r;
  }

  RatFunc inv() const {
    if (is_zero()) fail(ErrorCode::ZeroInverse, "inverse of the zero rational function");
    return from_parts(den_, num_);
  }

  /// Exact value at a point; PoleAtPoint when the denominator vanishes there.
  Rat eval_at(std::span<const Rat> point) const {
    Rat d = den_.eval(point);
    if (d == 0) fail(ErrorCode::PoleAtPoint, "denominator " + den_.to_string() + " vanishes");
    return num_.eval(point) / d;
  }

  RatFunc derivative(std::size_t var) const {
    // (n/d)' = (n' d - n d') / d^2
    Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return from_parts(std::move(n), den_ * den_);
  }

  std::string to_string(std::string_view var = "x") const {
    if (den_.is_one()) return num_.to_string(var);
    const std::string n = num_.to_string(var), d = den_.to_string(var);
    const bool wrap_n = num_.size() > 1;
    const bool wrap_d = den_.size() > 1 || d.find('*') != std::string::npos;
    return (wrap_n ? "(" + n + ")" : n) + "/" + (wrap_d ? "(" + d + ")" : d);
  }

  /// Cross-multiplication test, independent of how far the fractions were reduced.
  friend bool ratfunc_eq(const RatFunc& a, const RatFunc& b) {
    a.check_context(b);
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return ratfunc_eq(a, b); }

 private:
  static RatFunc from_parts(Poly num, Poly den) {
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    if (r.den_.is_zero()) fail(ErrorCode::ZeroInverse, "zero denominator");
    r.normalize();
    return r;
  }

  void check_context(const RatFunc& o) const {
    if (nvars() != o.nvars())
      fail(ErrorCode::ContextMismatch, "rational functions over different variable sets");
  }

  /// Removes a factor shared by a and b when one divides the other exactly.
  static void cancel(Poly& a, Poly& b) {
    if (a.is_constant() || b.is_constant()) return;
    if (a.total_degree() >= b.total_degree()) {
      if (auto q = a.exact_div(b)) {
        a = std::move(*q);
        b = Poly::constant(b.nvars(), 1);
      }
    } else if (auto q = b.exact_div(a)) {
      b = std::move(*q);
      a = Poly::constant(a.nvars(), 1);
    }
  }

  RatFunc add(const RatFunc& o, bool subtract) const {
    check_context(o);
    const Poly& on = o.num_;
    if (o.is_zero()) return *this;
    if (is_zero()) return subtract ? -o : o;
    if (den_ == o.den_) return from_parts(subtract ? num_ - on : num_ + on, den_);
    // Use the larger denominator as common one when the smaller divides it.
    if (den_.total_degree() <= o.den_.total_degree()) {
      if (auto q = o.den_.exact_div(den_)) {
        Poly n = num_ * *q;
        return from_parts(subtract ? n - on : n + on, o.den_);
      }
    } else if (auto q = den_.exact_div(o.den_)) {
      Poly n = on * *q;
      return from_parts(subtract ? num_ - n : num_ + n, den_);
    }
    Poly a = num_ * o.den_;
    Poly b = on * den_;
    return from_parts(subtract ? a - b : a + b, den_ * o.den_);
  }

  void normalize() {
    const std::size_t n = num_.nvars();
    if (num_.is_zero()) {
      den_ = Poly::constant(n, 1);
      return;
    }
    const Mono g = Mono::gcd(num_.monomial_content(), den_.monomial_content());
    if (!g.is_one()) {
      num_ = num_.divided_by_mono(g);
      den_ = den_.divided_by_mono(g);
    }
    if (!den_.is_constant()) {
      if (auto q = num_.exact_div(den_)) {
        num_ = std::move(*q);
        den_ = Poly::constant(n, 1);
      } else if (!num_.is_constant() && num_.total_degree() <= den_.total_degree()) {
        if (auto q2 = den_.exact_div(num_)) {
          den_ = std::move(*q2);
          num_ = Poly::constant(n, 1);
        }
      }
    }
    const Rat lc = den_.leading().coeff;
    if (lc != 1) {
      const Rat s = Rat(1) / lc;
      num_ = num_.scaled(s);
      den_ = den_.scaled(s);
    }
  }

  Poly num_;
  Poly den_;
};

inline bool ratfunc_eq(const RatFunc& a, const RatFunc& b);

}  // namespace nugrass
