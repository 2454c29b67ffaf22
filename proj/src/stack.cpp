#include "swe/stack.hpp"

#include <cmath>
#include <string>

#include "swe/error.hpp"

namespace swe {

void FrameStack::validate() const {
    geometry.validate();
    if (data.size() != geometry.stack_size())
        throw ConfigError("frame stack: data size " + std::to_string(data.size()) +
                          " does not match geometry (" + std::to_string(geometry.stack_size()) + ")");
    for (double v : data)
        if (!std::isfinite(v)) throw ConfigError("frame stack: non-finite sample");
}

void DisplacementStack::validate() const {
    geometry.validate();
    if (axial.size() != geometry.stack_size())
        throw ConfigError("displacement stack: axial size " + std::to_string(axial.size()) +
                          " does not match geometry (" + std::to_string(geometry.stack_size()) + ")");
    if (lateral && lateral->size() != geometry.stack_size())
        throw ConfigError("displacement stack: lateral size mismatch");
    for (std::size_t i = 0; i < geometry.frame_size(); ++i)
        if (axial[i] != 0.0) throw ConfigError("displacement stack: frame 0 must be identically zero");
    // 1 mm sanity bound, two orders above the expected 10-40 um regime.
    for (double v : axial) {
        if (!std::isfinite(v)) throw ConfigError("displacement stack: non-finite value");
        if (std::fabs(v) >= 1e-3) throw ConfigError("displacement stack: |axial| >= 1 mm");
    }
    if (lateral)
        for (double v : *lateral)
            if (!std::isfinite(v)) throw ConfigError("displacement stack: non-finite lateral value");
}

}  // namespace swe
