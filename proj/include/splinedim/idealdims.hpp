#pragma once

#include "splinedim/bounds.hpp"
#include "splinedim/complex.hpp"
#include "splinedim/linalg.hpp"
#include "splinedim/polynomial.hpp"

#include <vector>

namespace splinedim {

// Closed-form ideal dimensions for generic position.
Integer dim_twoface_ideal(long d, int r);         // C(d+1-r, 2)
Integer dim_twoface_ideal_coned(long d, int r);   // C(d+2-r, 3)
Integer dim_edge_ideal_formula(const EdgeData& ed, long d, int r);
Integer dim_edge_ideal_coned(const EdgeData& ed, long d, int r);  // sum over i <= d

struct IdealGenerator {
    LinearForm form;  // homogeneous
    int power = 1;
};

// Dimension in degree d of the ideal generated by the given powers of homogeneous
// linear forms, as the rank of the multiplication map into the degree-d monomials.
std::size_t dim_ideal_oracle(const std::vector<IdealGenerator>& generators, long d, const FieldSpec& field = {});

// Forms of the star's interior two-faces with the apex moved to the origin.
std::vector<IdealGenerator> twoface_generators(const StarComplex& s, int face_id, int r);
std::vector<IdealGenerator> edge_generators(const StarComplex& s, int edge_id, int r);
std::vector<IdealGenerator> vertex_generators(const StarComplex& s, int r);

// Same generators for the coned complex: affine forms of the complex read as
// homogeneous forms in (w, x, y, z).
std::vector<IdealGenerator> coned_twoface_generators(const CellComplex& c, int face_id, int r);
std::vector<IdealGenerator> coned_edge_generators(const CellComplex& c, int edge_id, int r);
std::vector<IdealGenerator> coned_vertex_generators(const CellComplex& c, int vertex, int r);

enum class IdealMethod { formula, oracle };

// Sum over interior two-faces minus sum over interior edges of the star.
Integer star_face_edge_chi(const StarComplex& s, long d, int r, IdealMethod method = IdealMethod::formula,
                           const FieldSpec& field = {});
// Adds the vertex term for closed stars. The formula method uses C(d+2,2) above
// D_gamma and the rank oracle at or below it.
Integer euler_char_J_star(const StarComplex& s, long d, int r, IdealMethod method = IdealMethod::formula,
                          const FieldSpec& field = {});

// Coned sum over interior two-faces minus coned sum over interior edges.
Integer chi_prime(const CellComplex& c, long d, int r, IdealMethod method = IdealMethod::formula,
                  const FieldSpec& field = {});
// chi_prime plus the coned vertex terms of the interior vertices.
Integer euler_char_J_coned(const CellComplex& c, long d, int r, IdealMethod method = IdealMethod::formula,
                           const FieldSpec& field = {});

}  // namespace splinedim
