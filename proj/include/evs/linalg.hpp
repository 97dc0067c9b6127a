#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include "evs/types.hpp"

namespace evs {

/// Pivot magnitudes below this are treated as singular.
inline constexpr double kPivotTol = 1e-12;

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// A is row-major n-by-n and is destroyed, as is b. Returns false when a
/// pivot falls below `pivot_tol` (system treated as singular).
bool solve_linear(std::size_t n, double* a, double* b, double* x,
                  double pivot_tol = kPivotTol);

/// Eigenvalues of a 2x2 matrix from its trace and determinant.
std::array<std::complex<double>, 2> eigenvalues_2x2(double trace, double det);

/// Roots of x^3 + c2 x^2 + c1 x + c0, real coefficients. Closed-form
/// (trigonometric for three real roots, Cardano otherwise) with a Newton
/// polish and quadratic deflation off the dominant real root.
std::array<std::complex<double>, 3> solve_cubic(double c2, double c1, double c0);

/// Eigenvalues of a 3x3 matrix via its characteristic cubic.
std::array<std::complex<double>, 3> eigenvalues_3x3(const Mat3& m);

}  // namespace evs
