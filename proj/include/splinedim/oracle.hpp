#pragma once

#include "splinedim/bounds.hpp"
#include "splinedim/complex.hpp"
#include "splinedim/linalg.hpp"
#include "splinedim/polynomial.hpp"

#include <map>

namespace splinedim {

struct NoStabilization : Error {
    using Error::Error;
};
struct NotFound : Error {
    using Error::Error;
};

enum class PolynomialBlocks { up_to_degree, homogeneous };

// Unknowns: one coefficient block per cell, then one cofactor block per interior
// codimension-one face. One equation block per interior face sigma between cells
// i < j encodes F_i - F_j - l_sigma^(r+1) g_sigma = 0.
struct ConstraintSystem {
    long d = 0;
    int r = 0;
    PolynomialBlocks blocks = PolynomialBlocks::up_to_degree;
    int nvars = 0;
    std::size_t cell_block = 0;
    std::size_t cofactor_block = 0;
    std::size_t num_cells = 0;
    std::vector<int> faces;          // interior face ids in equation order
    std::vector<LinearForm> forms;   // one per entry of faces
    SparseMatrix matrix;

    std::size_t cell_column(std::size_t cell, std::size_t mono) const { return cell * cell_block + mono; }
    std::size_t cofactor_column(std::size_t face_pos, std::size_t mono) const {
        return num_cells * cell_block + face_pos * cofactor_block + mono;
    }
};

// Polynomials of degree <= d in the ambient coordinates.
ConstraintSystem build_constraint_system(const CellComplex& complex, long d, int r);
// Homogeneous polynomials of degree d with the apex moved to the origin.
ConstraintSystem build_homogeneous_system(const StarComplex& star, long d, int r);

std::size_t spline_dim(const CellComplex& complex, long d, int r, const FieldSpec& field = {});
std::size_t homog_spline_dim(const StarComplex& star, long d, int r, const FieldSpec& field = {});

struct HilbertFit {
    CubicPolynomial poly;
    long stabilized_at = 0;
    std::map<long, std::size_t> samples;
};

// Cubic through the first window of four consecutive samples that also predicts
// the next two; sampling starts at d_start (default 3r+2) and stops at 10(r+1).
HilbertFit hilbert_polynomial(const CellComplex& complex, int r, const FieldSpec& field = {},
                              std::optional<long> d_start = std::nullopt);

// Smallest d >= r+1 with spline_dim > C(d+3,3), searched up to 10(r+1).
long initial_degree(const CellComplex& complex, int r, const FieldSpec& field = {});

// Cubic through four points (d, value).
CubicPolynomial interpolate_cubic(const std::array<long, 4>& ds, const std::array<Rational, 4>& values);

}  // namespace splinedim
