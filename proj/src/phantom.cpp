#include "swe/phantom.hpp"

#include <cstdint>
#include <fstream>

#include "swe/error.hpp"
#include "swe/kv.hpp"

namespace swe {

double PhantomSpec::youngs_at(double z, double x) const {
    if (inclusion) {
        const double dz = z - inclusion->center_axial;
        const double dx = x - inclusion->center_lateral;
        if (dz * dz + dx * dx <= inclusion->radius * inclusion->radius) return inclusion->youngs;
    }
    return background_youngs;
}

void PhantomSpec::validate() const {
    if (extent_axial <= 0 || extent_lateral <= 0)
        throw ConfigError("phantom: extents must be > 0");
    if (background_youngs < 15e3 || background_youngs > 30e3)
        throw ConfigError("phantom: background_youngs must be in [15e3, 30e3] Pa");
    if (poissons_ratio <= 0 || poissons_ratio >= 0.5)
        throw ConfigError("phantom: poissons_ratio must be in (0, 0.5)");
    if (density <= 0) throw ConfigError("phantom: density must be > 0");
    if (attenuation < 0) throw ConfigError("phantom: attenuation must be >= 0");
    if (inclusion) {
        const Inclusion& inc = *inclusion;
        if (inc.radius < 1.5e-3 || inc.radius > 5e-3)
            throw ConfigError("phantom: inclusion_radius must be in [1.5e-3, 5e-3] m");
        const double ratio = inc.youngs / background_youngs;
        if (ratio < 1.5 || ratio > 4.0)
            throw ConfigError("phantom: inclusion stiffness ratio must be in [1.5, 4.0]");
        if (inc.center_axial - inc.radius < 0 || inc.center_axial + inc.radius > extent_axial ||
            inc.center_lateral - inc.radius < 0 || inc.center_lateral + inc.radius > extent_lateral)
            throw ConfigError("phantom: inclusion extends outside the phantom");
    }
}

namespace {

PhantomSpec from_kv(const KeyValueFile& kv) {
    PhantomSpec spec;
    spec.extent_axial = kv.get_double("extent_axial", spec.extent_axial);
    spec.extent_lateral = kv.get_double("extent_lateral", spec.extent_lateral);
    spec.background_youngs = kv.get_double("background_youngs");
    spec.poissons_ratio = kv.get_double("poissons_ratio", spec.poissons_ratio);
    spec.density = kv.get_double("density", spec.density);
    spec.attenuation = kv.get_double("attenuation", spec.attenuation);

    const bool any_inc = kv.has("inclusion_center_axial") || kv.has("inclusion_center_lateral") ||
                         kv.has("inclusion_radius") || kv.has("inclusion_youngs");
    if (any_inc) {
        // inclusion_* keys are all-or-none
        Inclusion inc;
        inc.center_axial = kv.get_double("inclusion_center_axial");
        inc.center_lateral = kv.get_double("inclusion_center_lateral");
        inc.radius = kv.get_double("inclusion_radius");
        inc.youngs = kv.get_double("inclusion_youngs");
        spec.inclusion = inc;
    }

    static const char* known[] = {"extent_axial",           "extent_lateral",
                                  "background_youngs",      "poissons_ratio",
                                  "density",                "attenuation",
                                  "inclusion_center_axial", "inclusion_center_lateral",
                                  "inclusion_radius",       "inclusion_youngs"};
    for (const auto& key : kv.keys()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw ConfigError(kv.origin() + ":" + std::to_string(kv.line_of(key)) +
                              ": unknown phantom key `" + key + "`");
    }

    spec.validate();
    return spec;
}

}  // namespace

PhantomSpec load_phantom_spec(const std::filesystem::path& path) {
    return from_kv(KeyValueFile::parse_file(path));
}

PhantomSpec parse_phantom_spec(const std::string& text, const std::string& origin) {
    return from_kv(KeyValueFile::parse_string(text, origin));
}

void save_phantom_spec(const PhantomSpec& spec, const std::filesystem::path& path) {
    KeyValueWriter w;
    w.set("extent_axial", spec.extent_axial);
    w.set("extent_lateral", spec.extent_lateral);
    w.set("background_youngs", spec.background_youngs);
    w.set("poissons_ratio", spec.poissons_ratio);
    w.set("density", spec.density);
    w.set("attenuation", spec.attenuation);
    if (spec.inclusion) {
        w.set("inclusion_center_axial", spec.inclusion->center_axial);
        w.set("inclusion_center_lateral", spec.inclusion->center_lateral);
        w.set("inclusion_radius", spec.inclusion->radius);
        w.set("inclusion_youngs", spec.inclusion->youngs);
    }
    w.write(path);
}

std::string file_content_hash(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::uint64_t h = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ElasticityMap truth_elasticity_map(const PhantomSpec& spec, const ScanGeometry& geom) {
    ElasticityMap map(geom.n_lateral, geom.n_axial);
    const auto z = axial_positions(geom);
    const auto x = lateral_positions(geom, spec.extent_lateral);
    for (std::size_t l = 0; l < geom.n_lateral; ++l)
        for (std::size_t a = 0; a < geom.n_axial; ++a)
            map.at(l, a) = spec.youngs_at(z[a], x[l]);
    return map;
}

}  // namespace swe
