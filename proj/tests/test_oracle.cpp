#include "reference_tables.hpp"
#include "splinedim/oracle.hpp"

#include <doctest.h>

using namespace splinedim;
using namespace reftables;

namespace {

Coordinate pt(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

CellComplex tetrahedron() { return build_complex({pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)}, {{0, 1, 2, 3}}); }

CellComplex two_tetrahedra() {
    return build_complex({pt(0, 0, 0), pt(3, 0, 0), pt(0, 2, 0), pt(1, 1, 2), pt(1, 1, -3)}, {{0, 1, 2, 3}, {0, 1, 2, 4}});
}

StarComplex octahedron_star() {
    CellComplex c = generate_example(Example::octahedron_star, 1);
    for (int v = 0; v < c.num_vertices(); ++v)
        if (c.vertex_is_interior(v)) return star(c, v);
    throw Error("no interior vertex");
}

std::size_t binom3(long d) { return static_cast<std::size_t>(binom_trunc(d + 3, 3).get_ui()); }

// Entries of M x for an integer vector x given as a column -> value map.
std::map<std::uint32_t, Integer> multiply(const SparseMatrix& m, const std::map<std::size_t, Integer>& x) {
    std::map<std::uint32_t, Integer> out;
    for (const auto& e : m.entries) {
        auto it = x.find(e.col);
        if (it != x.end()) out[e.row] += e.value * it->second;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

TEST_CASE("single cell carries all polynomials") {
    CellComplex t = tetrahedron();
    for (int r = 0; r <= 2; ++r)
        for (long d = 0; d <= 6; ++d) CHECK(spline_dim(t, d, r) == binom3(d));
}

TEST_CASE("degrees up to r only see global polynomials") {
    CellComplex c = generate_example(Example::ms3d, 1);
    for (long d = 0; d <= 2; ++d) CHECK(spline_dim(c, d, 2) == binom3(d));
}

TEST_CASE("two cells across one plane") {
    // Splines are p + l^(r+1) q with q of degree d-r-1 on one side.
    CellComplex c = two_tetrahedra();
    for (int r = 0; r <= 2; ++r)
        for (long d = 0; d <= 6; ++d) CHECK(spline_dim(c, d, r) == binom3(d) + (d > r ? binom3(d - r - 1) : 0));
}

TEST_CASE("reference generic dimensions") {
    CHECK(spline_dim(generate_example(Example::ms3d, 1), 8, 2) == 243);
    CHECK(spline_dim(generate_example(Example::cube_octahedron, 1), 5, 1) == 60);
    CHECK(spline_dim(generate_example(Example::square_torus, 1), 3, 1) == 48);
}

TEST_CASE("dimensions never fall below the lower bound above degree r") {
    for (Example e : {Example::ms3d, Example::ms3d_cavity, Example::square_torus}) {
        CellComplex c = generate_example(e, 1);
        for (long d = 2; d <= 5; ++d) CHECK(Integer(static_cast<unsigned long>(spline_dim(c, d, 1))) >= lb(c, d, 1));
    }
}

TEST_CASE("more smoothness means fewer splines") {
    CellComplex c = generate_example(Example::ms3d_cavity, 1);
    for (long d = 0; d <= 6; ++d)
        for (int r = 0; r < 3; ++r) CHECK(spline_dim(c, d, r + 1) <= spline_dim(c, d, r));
}

TEST_CASE("homogeneous splines on the octahedron star") {
    StarComplex s = octahedron_star();
    CHECK(homog_spline_dim(s, 3, 2) == 10);
    CHECK(homog_spline_dim(s, 9, 2) == 152);
    for (long d = 3; d <= 10; ++d) CHECK(Integer(static_cast<unsigned long>(homog_spline_dim(s, d, 2))) >= lb_closed_star(s, d, 2));
}

TEST_CASE("splines on a star split into homogeneous pieces") {
    StarComplex s = octahedron_star();
    std::size_t running = 0;
    for (long d = 0; d <= 5; ++d) {
        running += homog_spline_dim(s, d, 1);
        CHECK(spline_dim(s.base, d, 1) == running);
    }
}

TEST_CASE("coning identifies degree-d splines with homogeneous ones") {
    CellComplex c = generate_example(Example::ms3d, 1);
    StarComplex coned = cone_star(c);
    for (long d = 0; d <= 4; ++d) CHECK(spline_dim(c, d, 1) == homog_spline_dim(coned, d, 1));
}

TEST_CASE("rational and modular ranks agree") {
    CellComplex c = generate_example(Example::ms3d, 1);
    for (long d = 3; d <= 6; ++d) CHECK(spline_dim(c, d, 1, FieldSpec::rational()) == spline_dim(c, d, 1, FieldSpec::prime_field(9)));
}

TEST_CASE("constraint system layout") {
    CellComplex c = generate_example(Example::ms3d, 1);
    const long d = 5;
    const int r = 1;
    ConstraintSystem sys = build_constraint_system(c, d, r);
    CHECK(sys.nvars == 3);
    CHECK(sys.blocks == PolynomialBlocks::up_to_degree);
    CHECK(sys.cell_block == binom3(d));
    CHECK(sys.cofactor_block == binom3(d - r - 1));
    CHECK(sys.faces.size() == static_cast<std::size_t>(c.f_interior(2)));
    CHECK(sys.forms.size() == sys.faces.size());
    CHECK(sys.matrix.cols == c.f(3) * sys.cell_block + sys.faces.size() * sys.cofactor_block);
    CHECK(sys.matrix.rows == sys.faces.size() * sys.cell_block);
    CHECK(spline_dim(c, d, r) == sys.matrix.cols - rank(sys.matrix, FieldSpec{}));

    ConstraintSystem h = build_homogeneous_system(octahedron_star(), 4, 1);
    CHECK(h.blocks == PolynomialBlocks::homogeneous);
    CHECK(h.cell_block == 15);
    CHECK(h.cofactor_block == 6);
}

TEST_CASE("a global polynomial solves the system") {
    CellComplex c = generate_example(Example::ms3d, 1);
    ConstraintSystem sys = build_constraint_system(c, 4, 1);
    std::map<std::size_t, Integer> x;
    for (std::size_t cell = 0; cell < sys.num_cells; ++cell)
        for (std::size_t m = 0; m < sys.cell_block; ++m) x[sys.cell_column(cell, m)] = Integer(static_cast<long>(m * 7 % 11) - 5);
    CHECK(multiply(sys.matrix, x).empty());
}

TEST_CASE("equations read F_i - F_j - l^(r+1) g for cells i < j") {
    CellComplex c = two_tetrahedra();
    const long d = 4;
    const int r = 1;
    ConstraintSystem sys = build_constraint_system(c, d, r);
    REQUIRE(sys.faces.size() == 1);
    MonomialBasis cells = MonomialBasis::up_to(3, static_cast<int>(d));
    MonomialBasis cof = MonomialBasis::up_to(3, static_cast<int>(d - r - 1));
    for (std::size_t g = 0; g < cof.size(); ++g) {
        // F_0 = l^(r+1) m, F_1 = 0, cofactor m.
        std::map<std::size_t, Integer> x;
        for (const Term& t : power_terms(sys.forms[0], r + 1)) {
            Exponent e = t.exponent;
            for (int k = 0; k < 3; ++k) e[k] += cof[g][k];
            x[sys.cell_column(0, static_cast<std::size_t>(cells.index(e)))] += t.coefficient;
        }
        x[sys.cofactor_column(0, g)] = 1;
        CHECK(multiply(sys.matrix, x).empty());
        x[sys.cofactor_column(0, g)] = -1;
        CHECK_FALSE(multiply(sys.matrix, x).empty());
    }
}

TEST_CASE("Hilbert polynomial") {
    HilbertFit tet = hilbert_polynomial(tetrahedron(), 1);
    CHECK(tet.poly == make_cubic(Rational(1) / 6, 1, Rational(11) / 6, 1));
    CHECK(tet.stabilized_at == 5);
    CHECK(tet.samples.size() == 6);

    CellComplex ms = generate_example(Example::ms3d, 1);
    HilbertFit fit = hilbert_polynomial(ms, 2, FieldSpec{}, 7);
    CHECK(fit.poly == lb_polynomial(ms, 2));
    CHECK(fit.stabilized_at == 7);
    for (const auto& [d, dim] : fit.samples) CHECK(Rational(static_cast<long>(dim)) == fit.poly(d));

    CHECK_THROWS_AS(hilbert_polynomial(tetrahedron(), 0, FieldSpec{}, 8), NoStabilization);
}

TEST_CASE("initial degree") {
    CHECK(initial_degree(generate_example(Example::ms3d, 1), 2) == 7);
    CHECK_THROWS_AS(initial_degree(tetrahedron(), 0), NotFound);
}

TEST_CASE("cubic interpolation") {
    CubicPolynomial p = make_cubic(Rational(5) / 2, -27, Rational(187) / 2, -57);
    std::array<long, 4> ds{3, 5, 8, 13};
    std::array<Rational, 4> vs;
    for (int i = 0; i < 4; ++i) vs[i] = p(ds[i]);
    CHECK(interpolate_cubic(ds, vs) == p);
    CHECK(interpolate_cubic({0, 1, 2, 3}, {1, 1, 1, 1}) == make_cubic(0, 0, 0, 1));
}
