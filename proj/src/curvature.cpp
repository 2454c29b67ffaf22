#include "swe/curvature.hpp"

#include <cmath>

#include "swe/error.hpp"

namespace swe {

double curvature_penalty(GridView u, bool include_lateral_axis) {
    if (u.rows < 1 || u.cols < 3)
        throw ConfigError("curvature: field must have >= 3 samples axially");
    double acc = 0.0;
    for (std::size_t l = 0; l < u.rows; ++l)
        for (std::size_t a = 1; a + 1 < u.cols; ++a)
            acc += std::fabs(u(l, a - 1) - 2.0 * u(l, a) + u(l, a + 1));
    if (include_lateral_axis) {
        for (std::size_t l = 1; l + 1 < u.rows; ++l)
            for (std::size_t a = 0; a < u.cols; ++a)
                acc += std::fabs(u(l - 1, a) - 2.0 * u(l, a) + u(l + 1, a));
    }
    return acc;
}

double charbonnier_curvature(GridView u, double eps, bool include_lateral_axis, Grid2d* grad) {
    if (u.rows < 1 || u.cols < 3)
        throw ConfigError("curvature: field must have >= 3 samples axially");
    if (grad && (grad->rows() != u.rows || grad->cols() != u.cols)) *grad = Grid2d(u.rows, u.cols);
    if (grad) grad->fill(0.0);

    const double eps2 = eps * eps;
    double acc = 0.0;
    for (std::size_t l = 0; l < u.rows; ++l) {
        for (std::size_t a = 1; a + 1 < u.cols; ++a) {
            const double d = u(l, a - 1) - 2.0 * u(l, a) + u(l, a + 1);
            const double root = std::sqrt(d * d + eps2);
            acc += root - eps;
            if (grad) {
                const double w = d / root;  // psi'(d)
                (*grad)(l, a - 1) += w;
                (*grad)(l, a) -= 2.0 * w;
                (*grad)(l, a + 1) += w;
            }
        }
    }
    if (include_lateral_axis) {
        for (std::size_t l = 1; l + 1 < u.rows; ++l) {
            for (std::size_t a = 0; a < u.cols; ++a) {
                const double d = u(l - 1, a) - 2.0 * u(l, a) + u(l + 1, a);
                const double root = std::sqrt(d * d + eps2);
                acc += root - eps;
                if (grad) {
                    const double w = d / root;
                    (*grad)(l - 1, a) += w;
                    (*grad)(l, a) -= 2.0 * w;
                    (*grad)(l + 1, a) += w;
                }
            }
        }
    }
    return acc;
}

}  // namespace swe
