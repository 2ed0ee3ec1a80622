#ifndef EYEWIT_JET_HPP
#define EYEWIT_JET_HPP

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace eyewit {

// Truncated Taylor series ("jet") in one variable: coefficients c[k] of
// (x - x0)^k up to a fixed order. Arithmetic is exact to the truncation
// order, which is what makes the closed-form derivative formulas here
// machine-precision instead of finite-difference approximations.
class Jet {
 public:
  Jet(int order, double constant = 0.0) : c_(size_t(order) + 1, 0.0) {
    c_[0] = constant;
  }

  // the identity function x, expanded around x0
  static Jet variable(int order, double x0) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return int(c_.size()) - 1; }
  double operator[](int k) const { return c_[size_t(k)]; }
  double& operator[](int k) { return c_[size_t(k)]; }

  // k-th derivative at the expansion point
  double derivative(int k) const {
    double d = c_[size_t(k)];
    for (int j = 2; j <= k; ++j) d *= j;
    return d;
  }

  Jet operator+(const Jet& o) const {
    Jet r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
    return r;
  }
  Jet operator-(const Jet& o) const {
    Jet r = *this;
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
    return r;
  }
  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Jet operator+(double s) const {
    Jet r = *this;
    r.c_[0] += s;
    return r;
  }
  Jet operator-(double s) const { return *this + (-s); }
  Jet operator*(double s) const {
    Jet r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  Jet operator*(const Jet& o) const {
    assert(order() == o.order());
    Jet r(order());
    for (int i = 0; i <= order(); ++i) {
      if (c_[size_t(i)] == 0.0) continue;
      for (int j = 0; i + j <= order(); ++j)
        r.c_[size_t(i + j)] += c_[size_t(i)] * o.c_[size_t(j)];
    }
    return r;
  }

  Jet pow(int n) const {
    Jet r(order(), 1.0);
    Jet base = *this;
    for (int e = n; e > 0; e >>= 1) {
      if (e & 1) r = r * base;
      base = base * base;
    }
    return r;
  }

  // 1 / this; requires nonzero constant term
  Jet reciprocal() const {
    Jet r(order());
    r.c_[0] = 1.0 / c_[0];
    for (int k = 1; k <= order(); ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += c_[size_t(j)] * r.c_[size_t(k - j)];
      r.c_[size_t(k)] = -r.c_[0] * s;
    }
    return r;
  }

  Jet exp() const {
    Jet r(order());
    r.c_[0] = std::exp(c_[0]);
    for (int k = 1; k <= order(); ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j)
        s += double(j) * c_[size_t(j)] * r.c_[size_t(k - j)];
      r.c_[size_t(k)] = s / double(k);
    }
    return r;
  }

 private:
  std::vector<double> c_;
};

inline Jet operator*(double s, const Jet& j) { return j * s; }
inline Jet operator+(double s, const Jet& j) { return j + s; }
inline Jet operator-(double s, const Jet& j) { return (-j) + s; }

}  // namespace eyewit

#endif
