#pragma once

// Characteristic classes up to cohomological degree 2, in the free basis
// {1, c1, c1^2, c2} of a rank-r bundle E.

#include <string>

#include "higgsnef/rational.hpp"

namespace higgsnef {

struct FormalClass {
  long rank = 1;
  Rational constant;
  Rational c1;
  Rational c1sq;
  Rational c2;

  bool operator==(const FormalClass&) const = default;

  FormalClass& operator*=(const Rational& k);
  friend FormalClass operator*(const Rational& k, FormalClass x) { return x *= k; }

  /// e.g. "c2 - 1/4 c1^2".
  std::string str() const;
};

/// Delta(E) = c2 - (r-1)/(2r) c1^2.
FormalClass delta_class(long r);

/// c2(E (x) E*) from the r^2 formal roots x_i - x_j, rewritten in c1^2, c2.
/// Supports 2 <= r <= 6.
FormalClass c2_tensor_dual(long r);

/// c1(E (x) E*) by the same expansion, as a multiple of c1.
Rational c1_tensor_dual(long r);

}  // namespace higgsnef
