#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "henon/grid.hpp"

using namespace henon;

TEST_CASE("grid values agree with pointwise green") {
    Context ctx(HenonMap{Polynomial::parse("x2-1"), 0.05});
    GridSpec spec;
    spec.plane = Plane::real;
    spec.nu = 17;
    spec.nv = 13;
    GridField g = green_grid(ctx, spec, Side::plus);
    REQUIRE(g.values.size() == size_t(17 * 13));
    for (int j = 0; j < spec.nv; ++j)
        for (int i = 0; i < spec.nu; ++i) {
            GreenValue v = green(ctx, spec.point(i, j), Side::plus);
            CHECK(g.at(i, j) == doctest::Approx(v.value).epsilon(1e-14));
            CHECK(bool(g.interior[size_t(j) * spec.nu + i]) == v.interior);
        }
    CHECK(g.min <= g.max);
    CHECK(g.min >= 0);
}

TEST_CASE("grid coordinates") {
    GridSpec s;
    s.nu = 5;
    s.nv = 3;
    s.fixed = cplx(0.5, 0.5);
    Point p = s.point(4, 2);
    CHECK(p.x == cplx(2, 2));
    CHECK(p.y == cplx(0.5, 0.5));
    s.plane = Plane::y;
    CHECK(s.point(0, 0).y == cplx(-2, -2));
    CHECK(plane_from_string(to_string(Plane::real)) == Plane::real);
    CHECK_THROWS_AS(plane_from_string("z"), Error);
}

TEST_CASE("output files") {
    Context ctx(HenonMap{Polynomial::parse("x2"), 0.02});
    GridSpec spec;
    spec.nu = 8;
    spec.nv = 6;
    GridField g = green_grid(ctx, spec, Side::minus);
    auto dir = std::filesystem::temp_directory_path() / "henon_grid_test";
    std::filesystem::create_directories(dir);
    write_pgm(g, (dir / "g.pgm").string());
    write_csv(g, (dir / "g.csv").string());
    write_sidecar(g, ctx, (dir / "g.json").string());

    std::ifstream pgm(dir / "g.pgm", std::ios::binary);
    std::string magic;
    int w, h, maxv;
    pgm >> magic >> w >> h >> maxv;
    pgm.get();
    CHECK(magic == "P5");
    CHECK(w == 8);
    CHECK(h == 6);
    CHECK(maxv == 65535);
    std::vector<char> body((std::istreambuf_iterator<char>(pgm)), {});
    CHECK(body.size() == size_t(2 * 8 * 6));
    auto q = quantize(g);
    for (size_t k = 0; k < q.size(); ++k) {
        unsigned short v = (static_cast<unsigned char>(body[2 * k]) << 8) | static_cast<unsigned char>(body[2 * k + 1]);
        CHECK(v == q[k]);
    }
    CHECK(*std::max_element(q.begin(), q.end()) == 65535);

    std::ifstream csv(dir / "g.csv");
    std::string line;
    int rows = 0;
    std::getline(csv, line);
    CHECK(line == "x,y,value");
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 48);

    std::ifstream js(dir / "g.json");
    auto j = nlohmann::json::parse(js);
    CHECK(j["width"] == 8);
    CHECK(j["quantity"] == g.quantity);
    std::filesystem::remove_all(dir);
}
