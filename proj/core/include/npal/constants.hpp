#pragma once

#include "npal/ball.hpp"

namespace npal {

// Certified enclosures of the algebraic constants behind the sequence's
// Binet representation: the dominant root alpha1 of x^3 - x^2 - 1 (the only
// real root, in (1.46, 1.47)) and the dominant Binet coefficient
// a1 = alpha1 / (3 alpha1^2 - 2 alpha1), the real root of 31 x^3 - 3 x - 1
// in (0.41, 0.42), together with the logarithms every bound chain consumes.
struct AlgebraicConstants {
  long precision_digits;
  RealBall alpha1;
  RealBall a1;
  RealBall log_alpha1;
  RealBall log10;
};

// Builds the constants at the requested decimal precision (>= 32).  Roots are
// refined by Newton iteration and certified by a sign change of the cubic on
// the enclosure's endpoints; enclosure widths are a few ulps.  Throws
// PrecisionError if refinement or certification fails within the iteration
// budget (10 * precision_digits), DomainError if precision_digits < 32.
AlgebraicConstants make_constants(long precision_digits);

}  // namespace npal
