#pragma once

#include <cstddef>
#include <vector>

namespace swe {

// Non-owning read-only view of a row-major 2D array.
struct GridView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;

    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t size() const { return rows * cols; }
};

// Row-major 2D array of doubles.
//
// Convention used throughout: for image-like grids the first index is the
// lateral line and the second the axial sample, so one A-line is contiguous.
class Grid2d {
public:
    Grid2d() = default;
    Grid2d(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return v_.size(); }

    double& operator()(std::size_t r, std::size_t c) { return v_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return v_[r * cols_ + c]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    double* row(std::size_t r) { return v_.data() + r * cols_; }
    const double* row(std::size_t r) const { return v_.data() + r * cols_; }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    void fill(double x) { v_.assign(v_.size(), x); }

    GridView view() const { return GridView{v_.data(), rows_, cols_}; }
    operator GridView() const { return view(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> v_;
};

}  // namespace swe
