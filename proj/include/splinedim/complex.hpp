#pragma once

#include "splinedim/numbers.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace splinedim {

struct DegenerateCell : Error {
    using Error::Error;
};
struct DuplicateCell : Error {
    using Error::Error;
};
struct InvalidLattice : Error {
    using Error::Error;
};
struct UnknownVertex : Error {
    using Error::Error;
};

enum class ComplexKind { simplicial, polytopal };

struct Face {
    int dim = 0;
    std::vector<int> vertices;  // strictly increasing
    bool interior = false;
    std::vector<int> cofaces;   // ids of faces of dimension dim+1 containing this one
    std::vector<int> subfaces;  // ids of faces of dimension dim-1 contained in this one
};

// One entry of an explicitly supplied polytopal face lattice.
struct FaceSpec {
    int dim = 0;
    std::vector<int> vertices;
};

// Pure n-dimensional cell complex with exact coordinates. Cells keep the order
// in which they were supplied; vertex faces are indexed by vertex id.
class CellComplex {
public:
    CellComplex() = default;

    int dimension() const { return dim_; }
    int ambient_dimension() const { return vertices_.empty() ? 0 : static_cast<int>(vertices_[0].size()); }
    ComplexKind kind() const { return kind_; }

    const std::vector<Coordinate>& vertices() const { return vertices_; }
    int num_vertices() const { return static_cast<int>(vertices_.size()); }

    const std::vector<Face>& faces(int dim) const { return faces_.at(dim); }
    const Face& face(int dim, int id) const { return faces_.at(dim).at(id); }
    const std::vector<Face>& cells() const { return faces_.at(dim_); }
    std::optional<int> find_face(int dim, const std::vector<int>& sorted_vertices) const;

    int f(int dim) const { return static_cast<int>(faces_.at(dim).size()); }
    // Interior count; the top dimension counts every cell.
    int f_interior(int dim) const;
    std::vector<int> interior_faces(int dim) const;
    bool vertex_is_interior(int v) const { return faces_.at(0).at(v).interior; }

    // Cells containing vertex v, in cell order.
    std::vector<int> cells_containing(int v) const;
    // Supplied lattice (dims 1..n-1) in a form accepted by build_complex.
    std::vector<FaceSpec> lattice() const;

    friend CellComplex build_complex(std::vector<Coordinate>, std::vector<std::vector<int>>,
                                     std::optional<std::vector<FaceSpec>>, std::optional<int>);

private:
    int dim_ = 0;
    ComplexKind kind_ = ComplexKind::simplicial;
    std::vector<Coordinate> vertices_;
    std::vector<std::vector<Face>> faces_;
    std::vector<std::map<std::vector<int>, int>> index_;
    std::vector<std::vector<int>> vertex_cells_;
};

// Builds the face lattice and classifies faces. Without polytopal_faces every
// cell must be a simplex. With polytopal_faces the lattice lists faces of
// dimensions 1..n-1; simplex-shaped cells get their subsets added automatically.
// The dimension defaults to (cell size - 1) for simplicial input and to one more
// than the largest supplied face dimension otherwise.
CellComplex build_complex(std::vector<Coordinate> vertices, std::vector<std::vector<int>> cells,
                          std::optional<std::vector<FaceSpec>> polytopal_faces = std::nullopt,
                          std::optional<int> dimension = std::nullopt);

struct ValidationReport {
    std::vector<std::string> violations;
    int interior_vertices = 0;
    int boundary_vertices = 0;
    bool accepted() const { return violations.empty(); }
};

// Link checks are a proxy for sphere/disk recognition: connected, expected Euler
// characteristic, every link ridge in at most two link facets, and every link
// vertex with a connected neighbourhood inside the link.
ValidationReport validate_manifold(const CellComplex& complex);

struct StarComplex {
    CellComplex base;
    int apex = 0;
    bool apex_is_interior = false;
    std::vector<int> global_vertex;  // local id -> id in the source complex
};

StarComplex star(const CellComplex& complex, int vertex_id);
CellComplex link(const CellComplex& complex, int vertex_id);

// Vertices map to (1, v); the cone vertex is the origin and is appended last.
CellComplex cone(const CellComplex& complex);
// The cone viewed as the star of its cone vertex.
StarComplex cone_star(const CellComplex& complex);

enum class Example { ms3d, ms3d_cavity, square_torus, octahedron_star, ms_cone_star, cube_octahedron };

std::optional<Example> parse_example(const std::string& name);
std::string example_name(Example e);
std::vector<Example> all_examples();

CellComplex generate_example(Example name, std::uint64_t seed);

// Affine rank of a point set (dimension of its affine hull), exact.
int affine_rank(const std::vector<Coordinate>& points);

}  // namespace splinedim
