#include "swe/lncc.hpp"

#include <cmath>
#include <vector>

#include "swe/error.hpp"

namespace swe {

namespace {

// Summed-area table, one row and column of zero padding at the front.
std::vector<double> sat(GridView src) {
    const std::size_t R = src.rows;
    const std::size_t C = src.cols;
    std::vector<double> s((R + 1) * (C + 1), 0.0);
    for (std::size_t r = 0; r < R; ++r) {
        double row_acc = 0.0;
        for (std::size_t c = 0; c < C; ++c) {
            row_acc += src(r, c);
            s[(r + 1) * (C + 1) + (c + 1)] = s[r * (C + 1) + (c + 1)] + row_acc;
        }
    }
    return s;
}

inline double rect(const std::vector<double>& s, std::size_t stride, std::size_t r0, std::size_t r1,
                   std::size_t c0, std::size_t c1) {
    // inclusive [r0, r1] x [c0, c1]
    return s[(r1 + 1) * stride + (c1 + 1)] - s[r0 * stride + (c1 + 1)] -
           s[(r1 + 1) * stride + c0] + s[r0 * stride + c0];
}

std::vector<double> sat_product(GridView a, GridView b) {
    const std::size_t R = a.rows;
    const std::size_t C = a.cols;
    std::vector<double> s((R + 1) * (C + 1), 0.0);
    for (std::size_t r = 0; r < R; ++r) {
        double row_acc = 0.0;
        for (std::size_t c = 0; c < C; ++c) {
            row_acc += a(r, c) * b(r, c);
            s[(r + 1) * (C + 1) + (c + 1)] = s[r * (C + 1) + (c + 1)] + row_acc;
        }
    }
    return s;
}

void check_window(GridView fixed, GridView warped, std::size_t win_r, std::size_t win_c) {
    if (fixed.rows != warped.rows || fixed.cols != warped.cols)
        throw ConfigError("lncc: image dims differ");
    if (win_r < 1 || win_c < 1 || win_r > fixed.rows || win_c > fixed.cols)
        throw ConfigError("lncc: window does not fit inside the frames");
}

}  // namespace

Grid2d box_sum(GridView src, std::size_t win_r, std::size_t win_c) {
    if (win_r < 1 || win_c < 1 || win_r > src.rows || win_c > src.cols)
        throw ConfigError("box_sum: window does not fit");
    const auto s = sat(src);
    const std::size_t stride = src.cols + 1;
    Grid2d out(src.rows - win_r + 1, src.cols - win_c + 1);
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
            out(r, c) = rect(s, stride, r, r + win_r - 1, c, c + win_c - 1);
    return out;
}

double lncc_similarity(GridView fixed, GridView warped, std::size_t win_lateral, std::size_t win_axial) {
    check_window(fixed, warped, win_lateral, win_axial);
    const double n = static_cast<double>(win_lateral * win_axial);

    const auto sf = sat(fixed);
    const auto sw = sat(warped);
    const auto sff = sat_product(fixed, fixed);
    const auto sww = sat_product(warped, warped);
    const auto sfw = sat_product(fixed, warped);
    const std::size_t stride = fixed.cols + 1;

    const std::size_t nr = fixed.rows - win_lateral + 1;
    const std::size_t nc = fixed.cols - win_axial + 1;
    double acc = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
        const std::size_t r1 = r + win_lateral - 1;
        for (std::size_t c = 0; c < nc; ++c) {
            const std::size_t c1 = c + win_axial - 1;
            const double Sf = rect(sf, stride, r, r1, c, c1);
            const double Sw = rect(sw, stride, r, r1, c, c1);
            const double vF = rect(sff, stride, r, r1, c, c1) - Sf * Sf / n;
            const double vW = rect(sww, stride, r, r1, c, c1) - Sw * Sw / n;
            if (vF <= kLnccVarEps || vW <= kLnccVarEps) continue;
            const double cov = rect(sfw, stride, r, r1, c, c1) - Sf * Sw / n;
            acc += cov / std::sqrt(vF * vW);
        }
    }
    return -acc / static_cast<double>(nr * nc);
}

double lncc_similarity_grad(GridView fixed, GridView warped, std::size_t win_lateral,
                            std::size_t win_axial, Grid2d& grad_wrt_warped) {
    check_window(fixed, warped, win_lateral, win_axial);
    const double n = static_cast<double>(win_lateral * win_axial);

    const auto sf = sat(fixed);
    const auto sw = sat(warped);
    const auto sff = sat_product(fixed, fixed);
    const auto sww = sat_product(warped, warped);
    const auto sfw = sat_product(fixed, warped);
    const std::size_t stride = fixed.cols + 1;

    const std::size_t nr = fixed.rows - win_lateral + 1;
    const std::size_t nc = fixed.cols - win_axial + 1;

    // Per-window fields entering the gradient:
    //   d NCC_p / d W_q = A_p F_q - B_p W_q - (A_p meanF_p - B_p meanW_p)
    // for q in window p, with A = 1/sqrt(vF vW), B = cov/(vW sqrt(vF vW)).
    Grid2d A(nr, nc), B(nr, nc), K(nr, nc);
    double acc = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
        const std::size_t r1 = r + win_lateral - 1;
        for (std::size_t c = 0; c < nc; ++c) {
            const std::size_t c1 = c + win_axial - 1;
            const double Sf = rect(sf, stride, r, r1, c, c1);
            const double Sw = rect(sw, stride, r, r1, c, c1);
            const double vF = rect(sff, stride, r, r1, c, c1) - Sf * Sf / n;
            const double vW = rect(sww, stride, r, r1, c, c1) - Sw * Sw / n;
            if (vF <= kLnccVarEps || vW <= kLnccVarEps) continue;
            const double cov = rect(sfw, stride, r, r1, c, c1) - Sf * Sw / n;
            const double a = 1.0 / std::sqrt(vF * vW);
            const double b = cov * a / vW;
            acc += cov * a;
            A(r, c) = a;
            B(r, c) = b;
            K(r, c) = (a * Sf - b * Sw) / n;  // A meanF - B meanW
        }
    }

    // Adjoint of the sliding window: sum each per-window field over the
    // windows containing a pixel (clamped rectangle over window origins).
    const auto sA = sat(A.view());
    const auto sB = sat(B.view());
    const auto sK = sat(K.view());
    const std::size_t wstride = nc + 1;
    const std::size_t R = fixed.rows;
    const std::size_t C = fixed.cols;
    if (grad_wrt_warped.rows() != R || grad_wrt_warped.cols() != C) grad_wrt_warped = Grid2d(R, C);

    const double scale = -1.0 / static_cast<double>(nr * nc);
    for (std::size_t q_r = 0; q_r < R; ++q_r) {
        const std::size_t r0 = (q_r + 1 >= win_lateral) ? q_r + 1 - win_lateral : 0;
        const std::size_t r1 = std::min(q_r, nr - 1);
        for (std::size_t q_c = 0; q_c < C; ++q_c) {
            const std::size_t c0 = (q_c + 1 >= win_axial) ? q_c + 1 - win_axial : 0;
            const std::size_t c1 = std::min(q_c, nc - 1);
            if (r0 > r1 || c0 > c1) {
                grad_wrt_warped(q_r, q_c) = 0.0;
                continue;
            }
            const double sumA = rect(sA, wstride, r0, r1, c0, c1);
            const double sumB = rect(sB, wstride, r0, r1, c0, c1);
            const double sumK = rect(sK, wstride, r0, r1, c0, c1);
            grad_wrt_warped(q_r, q_c) =
                scale * (fixed(q_r, q_c) * sumA - warped(q_r, q_c) * sumB - sumK);
        }
    }
    return -acc / static_cast<double>(nr * nc);
}

}  // namespace swe
