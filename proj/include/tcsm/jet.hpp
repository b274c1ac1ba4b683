#pragma once

// Truncated second-order Taylor jet along one direction:
//   f(x + t) = v + d t + (dd / 2) t^2 + O(t^3)
// so that d and dd are the exact first and second derivatives.

#include <cmath>
#include <complex>

namespace tcsm {

template <class T>
struct Jet {
  T v{};
  T d{};
  T dd{};

  Jet() = default;
  Jet(T value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Jet(T value, T first, T second) : v(value), d(first), dd(second) {}

  static Jet variable(T value) { return Jet(value, T(1), T(0)); }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    d += o.d;
    dd += o.dd;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    d -= o.d;
    dd -= o.dd;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    dd = dd * o.v + T(2) * d * o.d + v * o.dd;
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  Jet& operator/=(const Jet& o) { return *this *= reciprocal(o); }

  Jet operator-() const { return Jet(-v, -d, -dd); }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }

  /// chain rule for a scalar function with derivatives f0, f1, f2 at v
  Jet compose(T f0, T f1, T f2) const { return Jet(f0, f1 * d, f2 * d * d + f1 * dd); }

  friend Jet reciprocal(const Jet& x) {
    const T inv = T(1) / x.v;
    return x.compose(inv, -inv * inv, T(2) * inv * inv * inv);
  }
  friend Jet exp(const Jet& x) {
    using std::exp;
    const T e = exp(x.v);
    return x.compose(e, e, e);
  }
  friend Jet log(const Jet& x) {
    using std::log;
    const T inv = T(1) / x.v;
    return x.compose(log(x.v), inv, -inv * inv);
  }
  friend Jet sin(const Jet& x) {
    using std::cos;
    using std::sin;
    const T s = sin(x.v);
    return x.compose(s, cos(x.v), -s);
  }
  friend Jet cos(const Jet& x) {
    using std::cos;
    using std::sin;
    const T c = cos(x.v);
    return x.compose(c, -sin(x.v), -c);
  }
};

}  // namespace tcsm
