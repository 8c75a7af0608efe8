#include "splinedim/oracle.hpp"

#include <algorithm>

namespace splinedim {

namespace {

ConstraintSystem assemble(const CellComplex& c, long d, int r, PolynomialBlocks blocks, const Coordinate* origin) {
    if (d < 0 || r < 0) throw Error("degree and smoothness must be non-negative");
    ConstraintSystem sys;
    sys.d = d;
    sys.r = r;
    sys.blocks = blocks;
    sys.nvars = c.ambient_dimension();
    const bool affine = blocks == PolynomialBlocks::up_to_degree;
    const int n = c.dimension();
    auto make_basis = [&](long deg) {
        return affine ? MonomialBasis::up_to(sys.nvars, static_cast<int>(deg))
                      : MonomialBasis::homogeneous(sys.nvars, static_cast<int>(deg));
    };
    MonomialBasis basis = make_basis(d);
    const long cof_deg = d - r - 1;
    MonomialBasis cof_basis = make_basis(cof_deg);
    sys.cell_block = basis.size();
    sys.cofactor_block = cof_deg >= 0 ? cof_basis.size() : 0;
    sys.num_cells = c.cells().size();

    for (int s : c.interior_faces(n - 1)) {
        const Face& fc = c.face(n - 1, s);
        std::vector<std::vector<Rational>> pts;
        for (int v : fc.vertices) {
            Coordinate p = c.vertices()[v];
            if (origin)
                for (std::size_t k = 0; k < p.size(); ++k) p[k] -= (*origin)[k];
            pts.push_back(std::move(p));
        }
        sys.faces.push_back(s);
        sys.forms.push_back(hyperplane_through(pts, affine));
    }

    const std::size_t P = sys.cell_block, G = sys.cofactor_block;
    sys.matrix = SparseMatrix(sys.faces.size() * P, sys.num_cells * P + sys.faces.size() * G);
    sys.matrix.entries.reserve(sys.faces.size() * (2 * P + G * 20));
    Exponent prod(sys.nvars);
    for (std::size_t s = 0; s < sys.faces.size(); ++s) {
        const Face& fc = c.face(n - 1, sys.faces[s]);
        std::size_t i = static_cast<std::size_t>(std::min(fc.cofaces[0], fc.cofaces[1]));
        std::size_t j = static_cast<std::size_t>(std::max(fc.cofaces[0], fc.cofaces[1]));
        for (std::size_t m = 0; m < P; ++m) {
            sys.matrix.add(s * P + m, sys.cell_column(i, m), 1);
            sys.matrix.add(s * P + m, sys.cell_column(j, m), -1);
        }
        if (G == 0) continue;
        auto terms = power_terms(sys.forms[s], r + 1);
        for (std::size_t m = 0; m < G; ++m) {
            const Exponent& g = cof_basis[m];
            for (const auto& t : terms) {
                for (int k = 0; k < sys.nvars; ++k) prod[k] = g[k] + t.exponent[k];
                long row = basis.index(prod);
                if (row < 0) throw Error("cofactor product left the monomial basis");
                sys.matrix.add(s * P + static_cast<std::size_t>(row), sys.cofactor_column(s, m), -t.coefficient);
            }
        }
    }
    sys.matrix.canonicalize();
    return sys;
}

}  // namespace

ConstraintSystem build_constraint_system(const CellComplex& complex, long d, int r) {
    return assemble(complex, d, r, PolynomialBlocks::up_to_degree, nullptr);
}

ConstraintSystem build_homogeneous_system(const StarComplex& s, long d, int r) {
    const Coordinate& origin = s.base.vertices().at(s.apex);
    return assemble(s.base, d, r, PolynomialBlocks::homogeneous, &origin);
}

std::size_t spline_dim(const CellComplex& complex, long d, int r, const FieldSpec& field) {
    auto sys = build_constraint_system(complex, d, r);
    return kernel_dim(sys.matrix, field);
}

std::size_t homog_spline_dim(const StarComplex& s, long d, int r, const FieldSpec& field) {
    auto sys = build_homogeneous_system(s, d, r);
    return kernel_dim(sys.matrix, field);
}

CubicPolynomial interpolate_cubic(const std::array<long, 4>& ds, const std::array<Rational, 4>& values) {
    // Lagrange basis, accumulated coefficientwise.
    std::array<Rational, 4> coef{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        std::array<Rational, 4> basis{1, 0, 0, 0};
        Rational denom = 1;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            std::array<Rational, 4> next{0, 0, 0, 0};
            for (int k = 0; k < 3; ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * ds[j];
            }
            basis = next;
            denom *= ds[i] - ds[j];
        }
        for (int k = 0; k < 4; ++k) coef[k] += values[i] * basis[k] / denom;
    }
    CubicPolynomial p;
    p.coefficients = coef;
    p.valid_from = ds[0];
    return p;
}

HilbertFit hilbert_polynomial(const CellComplex& complex, int r, const FieldSpec& field, std::optional<long> d_start) {
    HilbertFit fit;
    const long start = d_start.value_or(3L * r + 2);
    const long cap = 10L * (r + 1);
    auto sample = [&](long d) {
        auto it = fit.samples.find(d);
        if (it == fit.samples.end()) it = fit.samples.emplace(d, spline_dim(complex, d, r, field)).first;
        return Rational(static_cast<unsigned long>(it->second));
    };
    for (long d0 = start; d0 + 5 <= cap; ++d0) {
        std::array<long, 4> ds{d0, d0 + 1, d0 + 2, d0 + 3};
        std::array<Rational, 4> vs{sample(ds[0]), sample(ds[1]), sample(ds[2]), sample(ds[3])};
        CubicPolynomial p = interpolate_cubic(ds, vs);
        if (p(d0 + 4) == sample(d0 + 4) && p(d0 + 5) == sample(d0 + 5)) {
            fit.poly = p;
            fit.stabilized_at = d0;
            return fit;
        }
    }
    throw NoStabilization("no stable cubic found up to degree " + std::to_string(cap));
}

long initial_degree(const CellComplex& complex, int r, const FieldSpec& field) {
    if (complex.f_interior(complex.dimension() - 1) == 0) throw NotFound("complex has no interior faces");
    const long cap = 10L * (r + 1);
    for (long d = r + 1; d <= cap; ++d)
        if (Integer(static_cast<unsigned long>(spline_dim(complex, d, r, field))) > binom_trunc(d + 3, 3)) return d;
    throw NotFound("no non-polynomial spline up to degree " + std::to_string(cap));
}

}  // namespace splinedim
