#include "splinedim/complex.hpp"


#include <array>
#include <random>

namespace splinedim {

namespace {

constexpr long kSteps = 1000;  // perturbation resolution per unit of the bound

struct Perturber {
    std::mt19937_64 rng;
    explicit Perturber(std::uint64_t seed) : rng(seed) {}
    // Uniform rational in [-bound, bound] with resolution bound/kSteps.
    Rational draw(const Rational& bound) {
        long k = static_cast<long>(rng() % (2 * kSteps + 1)) - kSteps;
        return bound * Rational(k) / kSteps;
    }
};

Rational min_edge_linf(const std::vector<Coordinate>& pts, const std::vector<std::vector<int>>& cells) {
    Rational best = -1;
    for (const auto& cell : cells)
        for (std::size_t i = 0; i < cell.size(); ++i)
            for (std::size_t j = i + 1; j < cell.size(); ++j) {
                Rational m = 0;
                for (std::size_t k = 0; k < pts[cell[i]].size(); ++k) {
                    Rational d = abs(pts[cell[i]][k] - pts[cell[j]][k]);
                    if (d > m) m = d;
                }
                if (best < 0 || m < best) best = m;
            }
    return best;
}

// Moves every coordinate by at most 1/1000 of the shortest cell edge (L-infinity).
std::vector<Coordinate> perturb(std::vector<Coordinate> pts, const std::vector<std::vector<int>>& cells,
                                std::uint64_t seed) {
    Rational bound = min_edge_linf(pts, cells) / 1000;
    Perturber rng(seed);
    for (auto& p : pts)
        for (auto& x : p) x += rng.draw(bound);
    return pts;
}

Coordinate point(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

CellComplex morgan_scott(std::uint64_t seed, bool with_inner) {
    // Outer tetrahedron A and the inner one B = -A/4.
    const std::array<std::array<long, 3>, 4> a{{{4, 4, 4}, {4, -4, -4}, {-4, 4, -4}, {-4, -4, 4}}};
    std::vector<Coordinate> pts;
    for (const auto& v : a) pts.push_back(point(v[0], v[1], v[2]));
    for (const auto& v : a) pts.push_back(point(-v[0] / 4, -v[1] / 4, -v[2] / 4));
    auto A = [](int i) { return i; };
    auto B = [](int i) { return 4 + i; };
    std::vector<std::vector<int>> cells;
    if (with_inner) cells.push_back({B(0), B(1), B(2), B(3)});
    for (int i = 0; i < 4; ++i) {
        std::vector<int> c{B(i)};
        for (int j = 0; j < 4; ++j)
            if (j != i) c.push_back(A(j));
        cells.push_back(c);
    }
    for (int i = 0; i < 4; ++i) {
        std::vector<int> c{A(i)};
        for (int j = 0; j < 4; ++j)
            if (j != i) c.push_back(B(j));
        cells.push_back(c);
    }
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) {
            std::vector<int> lm;
            for (int x = 0; x < 4; ++x)
                if (x != j && x != k) lm.push_back(x);
            cells.push_back({B(j), B(k), A(lm[0]), A(lm[1])});
        }
    return build_complex(perturb(pts, cells, seed), cells);
}

CellComplex octahedron_star(std::uint64_t seed) {
    std::vector<Coordinate> pts{point(0, 0, 0)};
    for (int axis = 0; axis < 3; ++axis)
        for (long s : {2L, -2L}) {
            Coordinate p = point(0, 0, 0);
            p[axis] = s;
            pts.push_back(p);
        }
    std::vector<std::vector<int>> cells;
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz) cells.push_back({0, 1 + sx, 3 + sy, 5 + sz});
    return build_complex(perturb(pts, cells, seed), cells);
}

CellComplex square_torus(std::uint64_t seed) {
    // Inner square |x|,|y| <= 1 and outer square <= 3, two layers z = 0, 2.
    const std::array<std::array<long, 2>, 4> corner{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}};
    auto id = [](int outer, int k, int z) { return outer * 8 + (k % 4) * 2 + z; };
    std::vector<Coordinate> pts(16);
    for (int outer = 0; outer < 2; ++outer)
        for (int k = 0; k < 4; ++k)
            for (int z = 0; z < 2; ++z) {
                long s = outer ? 3 : 1;
                pts[id(outer, k, z)] = point(s * corner[k][0], s * corner[k][1], 2 * z);
            }
    // Each trapezoidal prism is split into six tetrahedra along its main diagonal.
    const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    std::vector<std::vector<int>> cells;
    for (int k = 0; k < 4; ++k)
        for (const auto& perm : perms) {
            std::array<int, 3> x{0, 0, 0};
            std::vector<int> cell{id(0, k, 0)};
            for (int axis : perm) {
                x[axis] = 1;
                cell.push_back(id(x[0], k + x[1], x[2]));
            }
            cells.push_back(cell);
        }
    return build_complex(perturb(pts, cells, seed), cells);
}

CellComplex cube_octahedron(std::uint64_t seed) {
    // Cube [-2,2]^3 around the octahedron with vertices +-e_i. The boundary squares
    // carry no smoothness condition, so their corners are perturbed independently.
    std::vector<Coordinate> pts;
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz) pts.push_back(point(sx ? -2 : 2, sy ? -2 : 2, sz ? -2 : 2));
    auto cube_id = [](int sx, int sy, int sz) { return sx * 4 + sy * 2 + sz; };
    auto sign_of = [](int s) { return s ? -1L : 1L; };
    for (int axis = 0; axis < 3; ++axis)
        for (int s = 0; s < 2; ++s) {
            Coordinate p = point(0, 0, 0);
            p[axis] = sign_of(s);
            pts.push_back(p);
        }
    auto oct_id = [](int axis, int s) { return 8 + axis * 2 + s; };

    std::vector<std::vector<int>> cells;
    std::vector<FaceSpec> faces;
    cells.push_back({8, 9, 10, 11, 12, 13});
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            for (int sa = 0; sa < 2; ++sa)
                for (int sb = 0; sb < 2; ++sb) faces.push_back({1, {oct_id(a, sa), oct_id(b, sb)}});
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz) faces.push_back({2, {oct_id(0, sx), oct_id(1, sy), oct_id(2, sz)}});

    // Square pyramids over the cube faces, apex at the dual octahedron vertex.
    for (int axis = 0; axis < 3; ++axis)
        for (int s = 0; s < 2; ++s) {
            std::vector<int> square;
            for (int sx = 0; sx < 2; ++sx)
                for (int sy = 0; sy < 2; ++sy)
                    for (int sz = 0; sz < 2; ++sz) {
                        std::array<int, 3> sg{sx, sy, sz};
                        if (sg[axis] == s) square.push_back(cube_id(sx, sy, sz));
                    }
            int apex = oct_id(axis, s);
            std::vector<int> cell = square;
            cell.push_back(apex);
            cells.push_back(cell);
            faces.push_back({2, square});
            for (int v : square) faces.push_back({1, {v, apex}});
            for (std::size_t i = 0; i < square.size(); ++i)
                for (std::size_t j = i + 1; j < square.size(); ++j) {
                    int diff = __builtin_popcount(static_cast<unsigned>(square[i] ^ square[j]));
                    if (diff != 1) continue;
                    faces.push_back({1, {square[i], square[j]}});
                    faces.push_back({2, {square[i], square[j], apex}});
                }
        }
    // Tetrahedra joining a cube vertex to the dual octahedron triangle.
    for (int sx = 0; sx < 2; ++sx)
        for (int sy = 0; sy < 2; ++sy)
            for (int sz = 0; sz < 2; ++sz)
                cells.push_back({cube_id(sx, sy, sz), oct_id(0, sx), oct_id(1, sy), oct_id(2, sz)});
    // Tetrahedra joining a cube edge to the dual octahedron edge.
    for (int axis = 0; axis < 3; ++axis)
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
                int o1 = (axis + 1) % 3, o2 = (axis + 2) % 3;
                std::array<int, 3> lo{}, hi{};
                lo[axis] = 0;
                hi[axis] = 1;
                lo[o1] = hi[o1] = s1;
                lo[o2] = hi[o2] = s2;
                cells.push_back({cube_id(lo[0], lo[1], lo[2]), cube_id(hi[0], hi[1], hi[2]), oct_id(o1, s1),
                                 oct_id(o2, s2)});
            }
    return build_complex(perturb(pts, cells, seed), cells, faces, 3);
}

}  // namespace

std::optional<Example> parse_example(const std::string& name) {
    for (auto e : all_examples())
        if (example_name(e) == name) return e;
    return std::nullopt;
}

std::string example_name(Example e) {
    switch (e) {
        case Example::ms3d: return "ms3d";
        case Example::ms3d_cavity: return "ms3d_cavity";
        case Example::square_torus: return "square_torus";
        case Example::octahedron_star: return "octahedron_star";
        case Example::ms_cone_star: return "ms_cone_star";
        case Example::cube_octahedron: return "cube_octahedron";
    }
    return "";
}

std::vector<Example> all_examples() {
    return {Example::ms3d,           Example::ms3d_cavity,  Example::square_torus,
            Example::octahedron_star, Example::ms_cone_star, Example::cube_octahedron};
}

CellComplex generate_example(Example name, std::uint64_t seed) {
    switch (name) {
        case Example::ms3d: return morgan_scott(seed, true);
        case Example::ms3d_cavity: return morgan_scott(seed, false);
        case Example::square_torus: return square_torus(seed);
        case Example::octahedron_star: return octahedron_star(seed);
        case Example::ms_cone_star: return star(morgan_scott(seed, true), 0).base;
        case Example::cube_octahedron: return cube_octahedron(seed);
    }
    throw Error("unknown example");
}

}  // namespace splinedim
