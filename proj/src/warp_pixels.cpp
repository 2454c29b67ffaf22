#include <algorithm>
#include <cmath>

#include "swe/error.hpp"
#include "swe/warp.hpp"

namespace swe {

void warp_pixels(GridView moving, GridView shift_r, GridView shift_c, Grid2d& out,
                 Grid2d* d_dr, Grid2d* d_dc) {
    const std::size_t rows = moving.rows;
    const std::size_t cols = moving.cols;
    if (shift_r.rows != rows || shift_r.cols != cols || shift_c.rows != rows || shift_c.cols != cols)
        throw ConfigError("warp: shift dims do not match the frame");
    if (out.rows() != rows || out.cols() != cols) out = Grid2d(rows, cols);

    const double max_r = static_cast<double>(rows - 1);
    const double max_c = static_cast<double>(cols - 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double rr = static_cast<double>(r) + shift_r(r, c);
            const double cr = static_cast<double>(c) + shift_c(r, c);
            const bool clamped_r = rr < 0.0 || rr > max_r;
            const bool clamped_c = cr < 0.0 || cr > max_c;
            const double rc = clamped_r ? std::clamp(rr, 0.0, max_r) : rr;
            const double cc = clamped_c ? std::clamp(cr, 0.0, max_c) : cr;
            const std::size_t r0 = static_cast<std::size_t>(rc);
            const std::size_t c0 = static_cast<std::size_t>(cc);
            const std::size_t r1 = std::min(r0 + 1, rows - 1);
            const std::size_t c1 = std::min(c0 + 1, cols - 1);
            const double wr = rc - static_cast<double>(r0);
            const double wc = cc - static_cast<double>(c0);
            const double m00 = moving(r0, c0);
            const double m01 = moving(r0, c1);
            const double m10 = moving(r1, c0);
            const double m11 = moving(r1, c1);
            out(r, c) = (1.0 - wr) * ((1.0 - wc) * m00 + wc * m01) +
                        wr * ((1.0 - wc) * m10 + wc * m11);
            if (d_dr)
                (*d_dr)(r, c) = clamped_r ? 0.0 : (1.0 - wc) * (m10 - m00) + wc * (m11 - m01);
            if (d_dc)
                (*d_dc)(r, c) = clamped_c ? 0.0 : (1.0 - wr) * (m01 - m00) + wr * (m11 - m10);
        }
    }
}

}  // namespace swe
