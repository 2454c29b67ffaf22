#include <cstdint>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "swe/elasticity_map.hpp"
#include "swe/error.hpp"
#include "swe/geometry.hpp"
#include "swe/kv.hpp"
#include "swe/phantom.hpp"
#include "swe/rng.hpp"
#include "swe/stack_io.hpp"
#include "test_util.hpp"

using namespace swe;
using swe_test::TempDir;

TEST_CASE("scan geometry defaults and axial pitch") {
    ScanGeometry g;
    CHECK(g.n_axial == 1552);
    CHECK(g.n_lateral == 128);
    CHECK(g.n_frames == 50);
    CHECK(g.push_lateral_index == 64);
    CHECK(g.axial_pitch() == doctest::Approx(19.25e-6).epsilon(1e-12));
    g.validate();

    ScanGeometry bad = g;
    bad.push_lateral_index = 128;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = g;
    bad.sampling_freq = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("stack write produces the documented byte layout") {
    TempDir dir;
    ScanGeometry g;
    g.n_frames = 2;
    g.n_lateral = 3;
    g.n_axial = 4;
    g.push_lateral_index = 1;
    FrameStack stack(g);
    for (std::size_t i = 0; i < stack.data.size(); ++i) stack.data[i] = static_cast<double>(i) * 0.5;

    const auto path = dir.file("tiny.swf");
    const std::size_t bytes = write_stack(stack, path);
    // header 20 bytes + 2*3*4 binary32 samples
    CHECK(bytes == 20 + 2 * 3 * 4 * 4);
    CHECK(std::filesystem::file_size(path) == 116);

    std::ifstream in(path, std::ios::binary);
    char head[8];
    in.read(head, 8);
    CHECK(std::string(head, 4) == "SWF1");
    CHECK(head[4] == 1);  // version u32 little-endian

    const RawStack raw = read_stack_raw(path);
    CHECK(raw.n_frames == 2);
    CHECK(raw.n_lateral == 3);
    CHECK(raw.n_axial == 4);
    CHECK(raw.data == stack.data);  // float-representable values round-trip bit-exactly
}

TEST_CASE("stack read rejects malformed files") {
    TempDir dir;
    ScanGeometry g;
    g.n_frames = 2;
    g.n_lateral = 3;
    g.n_axial = 4;
    g.push_lateral_index = 1;
    FrameStack stack(g);
    const auto path = dir.file("tiny.swf");
    write_stack(stack, path);

    SUBCASE("bad magic") {
        auto bad = dir.file("bad_magic.swf");
        std::ofstream out(bad, std::ios::binary);
        out << "XXXX";
        std::ifstream in(path, std::ios::binary);
        in.seekg(4);
        out << in.rdbuf();
        out.close();
        CHECK_THROWS_AS(read_stack_raw(bad), FormatError);
    }
    SUBCASE("truncated payload: header declares 116 bytes, file has 100") {
        std::vector<char> bytes(100);
        std::ifstream in(path, std::ios::binary);
        in.read(bytes.data(), 100);
        auto trunc = dir.file("trunc.swf");
        std::ofstream out(trunc, std::ios::binary);
        out.write(bytes.data(), 100);
        out.close();
        CHECK_THROWS_AS(read_stack_raw(trunc), FormatError);
    }
    SUBCASE("unwritable path is an I/O error") {
        CHECK_THROWS_AS(write_stack(stack, dir.file("no_such_dir") / "x.swf"), IoError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_stack_raw(dir.file("absent.swf")), IoError);
    }
}

TEST_CASE("write/read round trip is the identity on files") {
    TempDir dir;
    ScanGeometry g = swe_test::small_geometry();
    g.n_frames = 3;
    FrameStack stack(g);
    swe::Rng rng(7);
    for (double& v : stack.data) v = rng.normal();
    const auto a = dir.file("a.swf");
    const auto b = dir.file("b.swf");
    write_stack(stack, a);

    // read then write again: byte-identical files
    FrameStack back = read_frame_stack(a, g);
    write_stack(back, b);
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::vector<char> ba((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::vector<char> bb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    CHECK(ba == bb);
}

TEST_CASE("phantom spec parsing") {
    SUBCASE("homogeneous phantom, defaults applied") {
        const auto spec = parse_phantom_spec("background_youngs = 20000\n");
        CHECK(spec.background_youngs == 20000.0);
        CHECK(!spec.inclusion);
        CHECK(spec.poissons_ratio == 0.495);  // default when omitted
        CHECK(spec.density == 1000.0);
        CHECK(spec.attenuation == 0.45);
        CHECK(spec.extent_axial == doctest::Approx(0.035));
        CHECK(spec.extent_lateral == doctest::Approx(0.025));
    }
    SUBCASE("inclusion radius above 5 mm is rejected") {
        const std::string text =
            "background_youngs = 20000\n"
            "inclusion_center_axial = 0.019\n"
            "inclusion_center_lateral = 0.012\n"
            "inclusion_radius = 0.007\n"
            "inclusion_youngs = 40000\n";
        CHECK_THROWS_AS(parse_phantom_spec(text), ConfigError);
    }
    SUBCASE("stiffness ratio above 4 is rejected") {
        const std::string text =
            "background_youngs = 20000\n"
            "inclusion_center_axial = 0.019\n"
            "inclusion_center_lateral = 0.012\n"
            "inclusion_radius = 0.003\n"
            "inclusion_youngs = 90000\n";  // 4.5x
        CHECK_THROWS_AS(parse_phantom_spec(text), ConfigError);
    }
    SUBCASE("inclusion keys are all-or-none") {
        const std::string text =
            "background_youngs = 20000\n"
            "inclusion_radius = 0.003\n";
        CHECK_THROWS_AS(parse_phantom_spec(text), ConfigError);
    }
    SUBCASE("missing mandatory key") {
        CHECK_THROWS_AS(parse_phantom_spec("poissons_ratio = 0.4\n"), ConfigError);
    }
    SUBCASE("errors carry the line number") {
        try {
            parse_phantom_spec("background_youngs = 20000\nnot a line\n", "spec.txt");
            FAIL("expected throw");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("spec.txt:2") != std::string::npos);
        }
    }
    SUBCASE("comments and blank lines are ignored") {
        const auto spec = parse_phantom_spec("# comment\n\nbackground_youngs = 25000 # inline\n");
        CHECK(spec.background_youngs == 25000.0);
    }
}

TEST_CASE("phantom spec file round trip") {
    TempDir dir;
    PhantomSpec spec = swe_test::small_phantom();
    spec.extent_axial = 0.035;
    spec.extent_lateral = 0.025;
    spec.inclusion = Inclusion{0.019, 0.0125, 3e-3, 60e3};
    const auto path = dir.file("phantom.txt");
    save_phantom_spec(spec, path);
    const PhantomSpec back = load_phantom_spec(path);
    CHECK(back.background_youngs == spec.background_youngs);
    REQUIRE(back.inclusion.has_value());
    CHECK(back.inclusion->radius == spec.inclusion->radius);
    CHECK(back.inclusion->youngs == spec.inclusion->youngs);
    CHECK(file_content_hash(path) == file_content_hash(path));
}

TEST_CASE("elasticity map CSV export") {
    TempDir dir;
    SUBCASE("constant 2x2 map") {
        ElasticityMap map(2, 2, 20000.0);
        const auto path = dir.file("map.csv");
        export_elasticity_map(map, path, MapFormat::csv);
        std::ifstream in(path);
        std::string l1, l2;
        std::getline(in, l1);
        std::getline(in, l2);
        CHECK(l1 == "20000,20000");
        CHECK(l2 == "20000,20000");
    }
    SUBCASE("invalid cells round-trip through the nan literal") {
        ElasticityMap map(2, 3, 1234.5);
        map.set(1, 2, 0.0, false);
        const auto path = dir.file("map.csv");
        export_elasticity_map(map, path, MapFormat::csv);
        const ElasticityMap back = import_elasticity_csv(path);
        CHECK(back.n_lateral == 2);
        CHECK(back.n_axial == 3);
        CHECK(back.is_valid(0, 0));
        CHECK(!back.is_valid(1, 2));
        CHECK(back.at(0, 1) == doctest::Approx(1234.5));
    }
    SUBCASE("all-invalid map cannot be exported") {
        ElasticityMap map(2, 2, 0.0, false);
        CHECK_THROWS_AS(export_elasticity_map(map, dir.file("x.csv"), MapFormat::csv), FormatError);
    }
}

TEST_CASE("elasticity map PGM export clamps to the 100 kPa scale") {
    TempDir dir;
    ElasticityMap map(1, 3);
    map.at(0, 0) = 100000.0;  // top of scale
    map.at(0, 1) = 50000.0;
    map.at(0, 2) = 250000.0;  // above scale, clamped
    const auto path = dir.file("map.pgm");
    export_elasticity_map(map, path, MapFormat::pgm);

    std::ifstream in(path, std::ios::binary);
    std::string magic, dims1, dims2, maxval;
    in >> magic >> dims1 >> dims2 >> maxval;
    CHECK(magic == "P5");
    CHECK(maxval == "65535");
    in.get();  // single whitespace after maxval
    unsigned char px[6];
    in.read(reinterpret_cast<char*>(px), 6);
    const unsigned p0 = (px[0] << 8) | px[1];
    const unsigned p1 = (px[2] << 8) | px[3];
    const unsigned p2 = (px[4] << 8) | px[5];
    CHECK(p0 == 65535);
    CHECK(p1 == 32768);  // round(50000 * 65535 / 100000)
    CHECK(p2 == 65535);
}

TEST_CASE("truth map rasterization places the inclusion disk") {
    PhantomSpec spec;
    spec.background_youngs = 20e3;
    spec.inclusion = Inclusion{0.019, 0.0125, 3e-3, 60e3};
    ScanGeometry g;
    const ElasticityMap map = truth_elasticity_map(spec, g);
    CHECK(map.valid_count() == map.values.size());

    const auto z = axial_positions(g);
    const auto x = lateral_positions(g, spec.extent_lateral);
    // center pixel of the inclusion
    std::size_t a_c = 0, l_c = 0;
    for (std::size_t a = 0; a < g.n_axial; ++a)
        if (std::abs(z[a] - 0.019) < std::abs(z[a_c] - 0.019)) a_c = a;
    for (std::size_t l = 0; l < g.n_lateral; ++l)
        if (std::abs(x[l] - 0.0125) < std::abs(x[l_c] - 0.0125)) l_c = l;
    CHECK(map.at(l_c, a_c) == 60e3);
    CHECK(map.at(0, 0) == 20e3);
}

TEST_CASE("key=value parser handles types and errors") {
    const auto kv = KeyValueFile::parse_string("a = 1.5\nb = 7\nc = hello\nflag = true\n");
    CHECK(kv.get_double("a") == 1.5);
    CHECK(kv.get_int("b") == 7);
    CHECK(kv.get_string("c") == "hello");
    CHECK(kv.get_bool("flag"));
    CHECK(kv.get_double("missing", 2.0) == 2.0);
    CHECK_THROWS_AS(kv.get_double("c"), ConfigError);
    CHECK_THROWS_AS(kv.get_double("missing"), ConfigError);
    CHECK_THROWS_AS(KeyValueFile::parse_string("a = 1\na = 2\n"), ConfigError);
}
