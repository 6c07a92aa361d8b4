#pragma once

// Fourth-order central stencils used by the surface machinery. The callable
// may return a double or a fixed-size Eigen vector/matrix.

#include <type_traits>
#include <utility>

namespace bcv::fd {

template <typename Fn>
auto first(Fn&& fn, double x, double h) {
  using Value = std::decay_t<decltype(fn(x))>;
  const Value m2 = fn(x - 2.0 * h);
  const Value m1 = fn(x - h);
  const Value p1 = fn(x + h);
  const Value p2 = fn(x + 2.0 * h);
  return Value((m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h));
}

template <typename Fn>
auto second(Fn&& fn, double x, double h) {
  using Value = std::decay_t<decltype(fn(x))>;
  const Value m2 = fn(x - 2.0 * h);
  const Value m1 = fn(x - h);
  const Value c = fn(x);
  const Value p1 = fn(x + h);
  const Value p2 = fn(x + 2.0 * h);
  return Value((-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h));
}

/// Partial derivatives of a two-parameter function at (u, v).
template <typename Fn>
auto partial_u(Fn&& fn, double u, double v, double h) {
  return first([&](double s) { return fn(s, v); }, u, h);
}

template <typename Fn>
auto partial_v(Fn&& fn, double u, double v, double h) {
  return first([&](double s) { return fn(u, s); }, v, h);
}

}  // namespace bcv::fd
