#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "swe/geometry.hpp"
#include "swe/grid.hpp"

namespace swe {

// Time sequence of 2D RF frames. Layout: [frame][lateral][axial],
// axial fastest. Frame 0 is the pre-push reference.
struct FrameStack {
    ScanGeometry geometry;
    std::vector<double> data;

    FrameStack() = default;
    explicit FrameStack(const ScanGeometry& g) : geometry(g), data(g.stack_size(), 0.0) {}

    double& at(std::size_t f, std::size_t l, std::size_t a) {
        return data[(f * geometry.n_lateral + l) * geometry.n_axial + a];
    }
    double at(std::size_t f, std::size_t l, std::size_t a) const {
        return data[(f * geometry.n_lateral + l) * geometry.n_axial + a];
    }

    GridView frame(std::size_t f) const {
        return GridView{data.data() + f * geometry.frame_size(), geometry.n_lateral, geometry.n_axial};
    }
    double* frame_data(std::size_t f) { return data.data() + f * geometry.frame_size(); }

    // Throws ConfigError on a dimension mismatch or non-finite sample.
    void validate() const;
};

// Per-frame dense displacement fields in meters, same layout as FrameStack.
// The lateral component is optional; most of the chain is axial-only.
struct DisplacementStack {
    ScanGeometry geometry;
    std::vector<double> axial;
    std::optional<std::vector<double>> lateral;

    DisplacementStack() = default;
    explicit DisplacementStack(const ScanGeometry& g) : geometry(g), axial(g.stack_size(), 0.0) {}

    double& ax(std::size_t f, std::size_t l, std::size_t a) {
        return axial[(f * geometry.n_lateral + l) * geometry.n_axial + a];
    }
    double ax(std::size_t f, std::size_t l, std::size_t a) const {
        return axial[(f * geometry.n_lateral + l) * geometry.n_axial + a];
    }

    GridView axial_frame(std::size_t f) const {
        return GridView{axial.data() + f * geometry.frame_size(), geometry.n_lateral, geometry.n_axial};
    }
    double* axial_frame_data(std::size_t f) { return axial.data() + f * geometry.frame_size(); }

    // Checks dims, frame-0-is-zero, finiteness and the |u| < 1 mm sanity bound.
    void validate() const;
};

}  // namespace swe
