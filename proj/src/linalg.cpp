#include "evs/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace evs {

bool solve_linear(std::size_t n, double* a, double* b, double* x, double pivot_tol) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::fabs(a[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double mag = std::fabs(a[row * n + col]);
            if (mag > best) {
                best = mag;
                pivot = row;
            }
        }
        if (best < pivot_tol) return false;
        if (pivot != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row * n + col] / a[col * n + col];
            a[row * n + col] = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
            b[row] -= factor * b[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a[i * n + j] * x[j];
        x[i] = acc / a[i * n + i];
    }
    return true;
}

std::array<std::complex<double>, 2> eigenvalues_2x2(double trace, double det) {
    const double disc = trace * trace - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return {std::complex<double>{0.5 * (trace - root), 0.0},
                std::complex<double>{0.5 * (trace + root), 0.0}};
    }
    const double imag = 0.5 * std::sqrt(-disc);
    return {std::complex<double>{0.5 * trace, -imag}, std::complex<double>{0.5 * trace, imag}};
}

namespace {

double eval_cubic(double c2, double c1, double c0, double x) {
    return ((x + c2) * x + c1) * x + c0;
}

double eval_cubic_deriv(double c2, double c1, double x) {
    return (3.0 * x + 2.0 * c2) * x + c1;
}

// A few Newton iterations to sharpen a closed-form real root.
double polish_root(double c2, double c1, double c0, double x) {
    for (int it = 0; it < 4; ++it) {
        const double f = eval_cubic(c2, c1, c0, x);
        const double df = eval_cubic_deriv(c2, c1, x);
        if (df == 0.0) break;
        const double step = f / df;
        x -= step;
        if (std::fabs(step) <= 1e-15 * std::max(1.0, std::fabs(x))) break;
    }
    return x;
}

}  // namespace

std::array<std::complex<double>, 3> solve_cubic(double c2, double c1, double c0) {
    // Depressed form t^3 + p t + q with x = t - c2/3.
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    double real_root;
    if (disc > 0.0) {
        // One real root (Cardano).
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + s);
        const double v = std::cbrt(-q / 2.0 - s);
        real_root = u + v - shift;
    } else {
        // Three real roots (trigonometric form); pick the dominant one.
        const double mag = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
        double best = -shift;
        if (mag > 0.0) {
            const double arg = std::clamp(3.0 * q / (p * mag), -1.0, 1.0);
            const double theta = std::acos(arg) / 3.0;
            best = mag * std::cos(theta) - shift;
            for (int k = 1; k < 3; ++k) {
                const double cand =
                    mag * std::cos(theta - 2.0 * M_PI * static_cast<double>(k) / 3.0) - shift;
                if (std::fabs(cand) > std::fabs(best)) best = cand;
            }
        }
        real_root = best;
    }
    real_root = polish_root(c2, c1, c0, real_root);

    // Deflate: x^3 + c2 x^2 + c1 x + c0 = (x - root)(x^2 + b x + c).
    const double b = c2 + real_root;
    const double c = c1 + real_root * b;
    const auto pair = eigenvalues_2x2(-b, c);
    return {std::complex<double>{real_root, 0.0}, pair[0], pair[1]};
}

std::array<std::complex<double>, 3> eigenvalues_3x3(const Mat3& m) {
    const double tr = m[0][0] + m[1][1] + m[2][2];
    // Sum of principal 2x2 minors.
    const double m01 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double m02 = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    const double m12 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    // Characteristic polynomial: x^3 - tr x^2 + (m01+m02+m12) x - det.
    return solve_cubic(-tr, m01 + m02 + m12, -det);
}

}  // namespace evs
