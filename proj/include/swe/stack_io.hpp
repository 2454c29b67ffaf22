#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "swe/stack.hpp"

namespace swe {

// Stack container file, magic "SWF1".
//
// Layout (little-endian): magic (4 bytes), version u32 = 1, n_frames u32,
// n_lateral u32, n_axial u32, then n_frames*n_lateral*n_axial IEEE-754
// binary32 samples, frame-major, lateral next, axial fastest.
// Header is 20 bytes.

struct RawStack {
    std::size_t n_frames = 0;
    std::size_t n_lateral = 0;
    std::size_t n_axial = 0;
    std::vector<double> data;  // promoted from the binary32 payload
};

// Returns total bytes written. Throws IoError / FormatError.
std::size_t write_stack(const FrameStack& stack, const std::filesystem::path& path);
std::size_t write_stack(const DisplacementStack& stack, const std::filesystem::path& path);
std::size_t write_stack_raw(std::size_t n_frames, std::size_t n_lateral, std::size_t n_axial,
                            const std::vector<double>& data, const std::filesystem::path& path);

// Exact inverse of write_stack. Throws FormatError on bad magic, truncated
// payload or non-finite samples.
RawStack read_stack_raw(const std::filesystem::path& path);

// Typed readers: dims come from the file, acquisition parameters from the
// template geometry.
FrameStack read_frame_stack(const std::filesystem::path& path, const ScanGeometry& like);
DisplacementStack read_displacement_stack(const std::filesystem::path& path, const ScanGeometry& like);

}  // namespace swe
