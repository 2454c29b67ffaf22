#include "swe/stack_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "swe/error.hpp"

namespace swe {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'F', '1'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 20;

void put_u32_le(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint32_t checked_u32(std::size_t n, const char* what) {
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw FormatError(std::string("stack write: ") + what + " overflows 32-bit header field");
    return static_cast<std::uint32_t>(n);
}

}  // namespace

std::size_t write_stack_raw(std::size_t n_frames, std::size_t n_lateral, std::size_t n_axial,
                            const std::vector<double>& data, const std::filesystem::path& path) {
    const std::size_t count = n_frames * n_lateral * n_axial;
    if (data.size() != count)
        throw FormatError("stack write: data size does not match declared dims");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());

    out.write(kMagic, 4);
    put_u32_le(out, kVersion);
    put_u32_le(out, checked_u32(n_frames, "n_frames"));
    put_u32_le(out, checked_u32(n_lateral, "n_lateral"));
    put_u32_le(out, checked_u32(n_axial, "n_axial"));

    // Payload is binary32; convert in chunks.
    std::vector<float> buf;
    const std::size_t chunk = 1u << 16;
    buf.reserve(std::min(chunk, count));
    std::size_t i = 0;
    while (i < count) {
        const std::size_t n = std::min(chunk, count - i);
        buf.resize(n);
        for (std::size_t k = 0; k < n; ++k) buf[k] = static_cast<float>(data[i + k]);
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n * 4));
        i += n;
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
    return kHeaderBytes + count * 4;
}

std::size_t write_stack(const FrameStack& stack, const std::filesystem::path& path) {
    const auto& g = stack.geometry;
    if (stack.data.size() != g.stack_size())
        throw FormatError("stack write: frame stack dims inconsistent");
    return write_stack_raw(g.n_frames, g.n_lateral, g.n_axial, stack.data, path);
}

std::size_t write_stack(const DisplacementStack& stack, const std::filesystem::path& path) {
    const auto& g = stack.geometry;
    if (stack.axial.size() != g.stack_size())
        throw FormatError("stack write: displacement stack dims inconsistent");
    // Only the axial component lives in a stack file; a lateral field, when
    // estimated, is written as its own stack.
    return write_stack_raw(g.n_frames, g.n_lateral, g.n_axial, stack.axial, path);
}

RawStack read_stack_raw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());

    unsigned char header[kHeaderBytes];
    in.read(reinterpret_cast<char*>(header), kHeaderBytes);
    if (in.gcount() != static_cast<std::streamsize>(kHeaderBytes))
        throw FormatError("stack read: file shorter than 20-byte header: " + path.string());
    if (std::memcmp(header, kMagic, 4) != 0)
        throw FormatError("stack read: bad magic (expected SWF1): " + path.string());
    const std::uint32_t version = get_u32_le(header + 4);
    if (version != kVersion)
        throw FormatError("stack read: unsupported version " + std::to_string(version));

    RawStack raw;
    raw.n_frames = get_u32_le(header + 8);
    raw.n_lateral = get_u32_le(header + 12);
    raw.n_axial = get_u32_le(header + 16);
    const std::size_t count = raw.n_frames * raw.n_lateral * raw.n_axial;

    std::vector<float> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(count * 4));
    if (in.gcount() != static_cast<std::streamsize>(count * 4))
        throw FormatError("stack read: truncated payload, declared " +
                          std::to_string(kHeaderBytes + count * 4) + " bytes total: " + path.string());
    char extra;
    if (in.read(&extra, 1))
        throw FormatError("stack read: trailing bytes after payload: " + path.string());

    raw.data.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::isfinite(payload[i]))
            throw FormatError("stack read: non-finite sample at index " + std::to_string(i));
        raw.data[i] = static_cast<double>(payload[i]);
    }
    return raw;
}

namespace {

ScanGeometry geometry_from_raw(const RawStack& raw, const ScanGeometry& like) {
    ScanGeometry g = like;
    g.n_frames = raw.n_frames;
    g.n_lateral = raw.n_lateral;
    g.n_axial = raw.n_axial;
    if (g.push_lateral_index >= g.n_lateral) g.push_lateral_index = g.n_lateral / 2;
    g.validate();
    return g;
}

}  // namespace

FrameStack read_frame_stack(const std::filesystem::path& path, const ScanGeometry& like) {
    RawStack raw = read_stack_raw(path);
    FrameStack stack;
    stack.geometry = geometry_from_raw(raw, like);
    stack.data = std::move(raw.data);
    return stack;
}

DisplacementStack read_displacement_stack(const std::filesystem::path& path, const ScanGeometry& like) {
    RawStack raw = read_stack_raw(path);
    DisplacementStack stack;
    stack.geometry = geometry_from_raw(raw, like);
    stack.axial = std::move(raw.data);
    return stack;
}

}  // namespace swe
