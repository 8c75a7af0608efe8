#include "splinedim/idealdims.hpp"

#include <algorithm>

namespace splinedim {

Integer dim_twoface_ideal(long d, int r) { return binom_trunc(d + 1 - r, 2); }

Integer dim_twoface_ideal_coned(long d, int r) { return binom_trunc(d + 2 - r, 3); }

Integer dim_edge_ideal_formula(const EdgeData& ed, long d, int r) {
    return ed.t * binom_trunc(d + 1 - r, 2) - ed.a * binom_trunc(d + 1 - ed.q, 2) - ed.b * binom_trunc(d + 2 - ed.q, 2);
}

Integer dim_edge_ideal_coned(const EdgeData& ed, long d, int r) {
    return ed.t * binom_trunc(d + 2 - r, 3) - ed.a * binom_trunc(d + 2 - ed.q, 3) - ed.b * binom_trunc(d + 3 - ed.q, 3);
}

std::size_t dim_ideal_oracle(const std::vector<IdealGenerator>& generators, long d, const FieldSpec& field) {
    if (d < 0) throw Error("degree must be non-negative");
    if (generators.empty()) return 0;
    const int nvars = generators[0].form.nvars();
    for (const auto& g : generators) {
        if (g.form.affine) throw Error("ideal generators must be homogeneous forms");
        if (g.form.nvars() != nvars) throw Error("ideal generators use different variable counts");
        if (g.power < 0) throw Error("generator power must be non-negative");
    }
    MonomialBasis target = MonomialBasis::homogeneous(nvars, static_cast<int>(d));
    std::size_t cols = 0;
    for (const auto& g : generators)
        if (d >= g.power) cols += MonomialBasis::homogeneous(nvars, static_cast<int>(d - g.power)).size();
    SparseMatrix m(target.size(), cols);
    std::size_t col = 0;
    Exponent prod(nvars);
    for (const auto& g : generators) {
        if (d < g.power) continue;
        MonomialBasis mult = MonomialBasis::homogeneous(nvars, static_cast<int>(d - g.power));
        auto terms = power_terms(g.form, g.power);
        for (std::size_t k = 0; k < mult.size(); ++k, ++col)
            for (const auto& t : terms) {
                for (int v = 0; v < nvars; ++v) prod[v] = mult[k][v] + t.exponent[v];
                m.add(static_cast<std::size_t>(target.index(prod)), col, t.coefficient);
            }
    }
    m.canonicalize();
    return rank(m, field);
}

namespace {

LinearForm star_form(const StarComplex& s, int face_id) {
    const Coordinate& origin = s.base.vertices().at(s.apex);
    std::vector<std::vector<Rational>> pts;
    for (int v : s.base.face(2, face_id).vertices) {
        if (v == s.apex) continue;
        Coordinate p = s.base.vertices()[v];
        for (std::size_t k = 0; k < p.size(); ++k) p[k] -= origin[k];
        pts.push_back(std::move(p));
    }
    return hyperplane_through(pts, false);
}

LinearForm coned_form(const CellComplex& c, int face_id) {
    std::vector<std::vector<Rational>> pts;
    for (int v : c.face(2, face_id).vertices) pts.push_back(c.vertices()[v]);
    LinearForm f = hyperplane_through(pts, true);
    f.affine = false;
    return f;
}

bool contains(const Face& fc, int v) { return std::binary_search(fc.vertices.begin(), fc.vertices.end(), v); }

void require_dimension_three(const CellComplex& c) {
    if (c.dimension() != 3) throw Error("ideal computations need a 3-dimensional complex");
}

// Interior two-faces of c containing every vertex of `vs`.
std::vector<int> faces_through(const CellComplex& c, const std::vector<int>& vs) {
    std::vector<int> out;
    for (int f : c.interior_faces(2)) {
        const Face& fc = c.face(2, f);
        if (std::all_of(vs.begin(), vs.end(), [&](int v) { return contains(fc, v); })) out.push_back(f);
    }
    return out;
}

}  // namespace

std::vector<IdealGenerator> twoface_generators(const StarComplex& s, int face_id, int r) {
    require_dimension_three(s.base);
    if (!contains(s.base.face(2, face_id), s.apex)) throw Error("two-face does not contain the apex");
    return {{star_form(s, face_id), r + 1}};
}

std::vector<IdealGenerator> edge_generators(const StarComplex& s, int edge_id, int r) {
    require_dimension_three(s.base);
    const Face& e = s.base.face(1, edge_id);
    if (!contains(e, s.apex)) throw Error("edge does not contain the apex");
    std::vector<IdealGenerator> out;
    for (int f : faces_through(s.base, e.vertices)) out.push_back({star_form(s, f), r + 1});
    return out;
}

std::vector<IdealGenerator> vertex_generators(const StarComplex& s, int r) {
    require_dimension_three(s.base);
    std::vector<IdealGenerator> out;
    for (int f : faces_through(s.base, {s.apex})) out.push_back({star_form(s, f), r + 1});
    return out;
}

std::vector<IdealGenerator> coned_twoface_generators(const CellComplex& c, int face_id, int r) {
    require_dimension_three(c);
    return {{coned_form(c, face_id), r + 1}};
}

std::vector<IdealGenerator> coned_edge_generators(const CellComplex& c, int edge_id, int r) {
    require_dimension_three(c);
    std::vector<IdealGenerator> out;
    for (int f : faces_through(c, c.face(1, edge_id).vertices)) out.push_back({coned_form(c, f), r + 1});
    return out;
}

std::vector<IdealGenerator> coned_vertex_generators(const CellComplex& c, int vertex, int r) {
    require_dimension_three(c);
    std::vector<IdealGenerator> out;
    for (int f : faces_through(c, {vertex})) out.push_back({coned_form(c, f), r + 1});
    return out;
}

Integer star_face_edge_chi(const StarComplex& s, long d, int r, IdealMethod method, const FieldSpec& field) {
    require_dimension_three(s.base);
    auto as_int = [](std::size_t x) { return Integer(static_cast<unsigned long>(x)); };
    Integer chi = 0;
    for (int f : faces_through(s.base, {s.apex}))
        chi += method == IdealMethod::formula ? dim_twoface_ideal(d, r)
                                              : as_int(dim_ideal_oracle(twoface_generators(s, f, r), d, field));
    for (int e : s.base.interior_faces(1)) {
        if (!contains(s.base.face(1, e), s.apex)) continue;
        chi -= method == IdealMethod::formula ? dim_edge_ideal_formula(edge_data(s.base, e, r), d, r)
                                              : as_int(dim_ideal_oracle(edge_generators(s, e, r), d, field));
    }
    return chi;
}

Integer euler_char_J_star(const StarComplex& s, long d, int r, IdealMethod method, const FieldSpec& field) {
    Integer chi = star_face_edge_chi(s, d, r, method, field);
    if (!s.apex_is_interior) return chi;
    if (method == IdealMethod::formula && d > d_gamma(s, r)) return chi + binom_trunc(d + 2, 2);
    return chi + Integer(static_cast<unsigned long>(dim_ideal_oracle(vertex_generators(s, r), d, field)));
}

Integer chi_prime(const CellComplex& c, long d, int r, IdealMethod method, const FieldSpec& field) {
    require_dimension_three(c);
    auto as_int = [](std::size_t x) { return Integer(static_cast<unsigned long>(x)); };
    Integer chi = 0;
    for (int f : c.interior_faces(2))
        chi += method == IdealMethod::formula ? dim_twoface_ideal_coned(d, r)
                                              : as_int(dim_ideal_oracle(coned_twoface_generators(c, f, r), d, field));
    for (int e : c.interior_faces(1))
        chi -= method == IdealMethod::formula ? dim_edge_ideal_coned(edge_data(c, e, r), d, r)
                                              : as_int(dim_ideal_oracle(coned_edge_generators(c, e, r), d, field));
    return chi;
}

Integer euler_char_J_coned(const CellComplex& c, long d, int r, IdealMethod method, const FieldSpec& field) {
    Integer chi = chi_prime(c, d, r, method, field);
    for (int v : c.interior_faces(0)) {
        if (method == IdealMethod::oracle) {
            chi += Integer(static_cast<unsigned long>(dim_ideal_oracle(coned_vertex_generators(c, v, r), d, field)));
            continue;
        }
        // dim J(gamma-hat)_d is the sum of dim J(gamma)_i over i <= d.
        StarComplex s = star(c, v);
        const long dg = d_gamma(s, r);
        for (long i = 0; i <= d; ++i)
            chi += i > dg ? binom_trunc(i + 2, 2)
                          : Integer(static_cast<unsigned long>(dim_ideal_oracle(vertex_generators(s, r), i, field)));
    }
    return chi;
}

}  // namespace splinedim
