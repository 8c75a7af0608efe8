#include "splinedim/complex.hpp"

#include "splinedim/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace splinedim {

int affine_rank(const std::vector<Coordinate>& points) {
    if (points.size() < 2) return 0;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 1; i < points.size(); ++i) {
        std::vector<Rational> row(points[i].size());
        for (std::size_t k = 0; k < row.size(); ++k) row[k] = points[i][k] - points[0][k];
        rows.push_back(std::move(row));
    }
    return dense_rank(std::move(rows));
}

std::optional<int> CellComplex::find_face(int dim, const std::vector<int>& sorted_vertices) const {
    if (dim < 0 || dim > dim_) return std::nullopt;
    auto it = index_[dim].find(sorted_vertices);
    if (it == index_[dim].end()) return std::nullopt;
    return it->second;
}

int CellComplex::f_interior(int dim) const {
    if (dim == dim_) return f(dim);
    const auto& fs = faces_.at(dim);
    return static_cast<int>(std::count_if(fs.begin(), fs.end(), [](const Face& x) { return x.interior; }));
}

std::vector<int> CellComplex::interior_faces(int dim) const {
    std::vector<int> out;
    const auto& fs = faces_.at(dim);
    for (int i = 0; i < static_cast<int>(fs.size()); ++i)
        if (fs[i].interior || dim == dim_) out.push_back(i);
    return out;
}

std::vector<int> CellComplex::cells_containing(int v) const {
    if (v < 0 || v >= num_vertices()) throw UnknownVertex("unknown vertex " + std::to_string(v));
    return vertex_cells_[v];
}

std::vector<FaceSpec> CellComplex::lattice() const {
    std::vector<FaceSpec> out;
    for (int k = 1; k < dim_; ++k)
        for (const auto& fc : faces_[k]) out.push_back({k, fc.vertices});
    return out;
}

namespace {

void for_each_subset(const std::vector<int>& set, int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick(size);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == size) {
            fn(pick);
            return;
        }
        for (int i = start; i <= static_cast<int>(set.size()) - (size - depth); ++i) {
            pick[depth] = set[i];
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

bool is_subset(const std::vector<int>& small, const std::vector<int>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string describe(const std::vector<int>& vs) {
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s + "}";
}

std::vector<Coordinate> gather(const std::vector<Coordinate>& coords, const std::vector<int>& ids) {
    std::vector<Coordinate> out;
    out.reserve(ids.size());
    for (int v : ids) out.push_back(coords[v]);
    return out;
}

}  // namespace

CellComplex build_complex(std::vector<Coordinate> vertices, std::vector<std::vector<int>> cells,
                          std::optional<std::vector<FaceSpec>> polytopal_faces, std::optional<int> dimension) {
    CellComplex c;
    c.vertices_ = std::move(vertices);
    c.kind_ = polytopal_faces ? ComplexKind::polytopal : ComplexKind::simplicial;
    const int nv = c.num_vertices();
    if (cells.empty()) throw Error("complex has no cells");
    if (nv == 0) throw Error("complex has no vertices");
    const std::size_t ambient = c.vertices_[0].size();
    for (const auto& p : c.vertices_)
        if (p.size() != ambient) throw Error("vertices have inconsistent coordinate lengths");

    for (auto& cell : cells) {
        for (int v : cell)
            if (v < 0 || v >= nv) throw UnknownVertex("cell refers to unknown vertex " + std::to_string(v));
        std::sort(cell.begin(), cell.end());
        if (std::adjacent_find(cell.begin(), cell.end()) != cell.end())
            throw DegenerateCell("cell repeats a vertex: " + describe(cell));
    }

    int n;
    if (dimension)
        n = *dimension;
    else if (!polytopal_faces || polytopal_faces->empty())
        n = static_cast<int>(cells[0].size()) - 1;
    else {
        n = 1;
        for (const auto& fs : *polytopal_faces) n = std::max(n, fs.dim + 1);
    }
    if (n < 1) throw Error("complex dimension must be positive");
    if (static_cast<int>(ambient) < n) throw Error("ambient dimension smaller than complex dimension");
    c.dim_ = n;

    {
        std::set<std::vector<int>> seen;
        for (const auto& cell : cells) {
            if (!seen.insert(cell).second) throw DuplicateCell("cell listed twice: " + describe(cell));
            if (c.kind_ == ComplexKind::simplicial && static_cast<int>(cell.size()) != n + 1)
                throw DegenerateCell("simplicial cell needs " + std::to_string(n + 1) + " vertices: " + describe(cell));
            if (static_cast<int>(cell.size()) < n + 1)
                throw DegenerateCell("cell has too few vertices: " + describe(cell));
            const int rank = affine_rank(gather(c.vertices_, cell));
            if (rank < n || (c.kind_ == ComplexKind::simplicial && rank != n))
                throw DegenerateCell("cell vertices are not affinely spanning: " + describe(cell));
        }
    }

    c.faces_.assign(n + 1, {});
    c.index_.assign(n + 1, {});
    for (int v = 0; v < nv; ++v) {
        c.faces_[0].push_back(Face{0, {v}, false, {}, {}});
        c.index_[0][{v}] = v;
    }
    auto add_face = [&](int dim, const std::vector<int>& vs) {
        auto [it, inserted] = c.index_[dim].emplace(vs, static_cast<int>(c.faces_[dim].size()));
        if (inserted) c.faces_[dim].push_back(Face{dim, vs, false, {}, {}});
        return it->second;
    };

    for (const auto& cell : cells) {
        if (static_cast<int>(cell.size()) != n + 1) continue;
        for (int k = 1; k < n; ++k) for_each_subset(cell, k + 1, [&](const std::vector<int>& s) { add_face(k, s); });
    }
    if (polytopal_faces) {
        for (auto fs : *polytopal_faces) {
            if (fs.dim < 1 || fs.dim >= n) throw InvalidLattice("lattice face of dimension " + std::to_string(fs.dim));
            std::sort(fs.vertices.begin(), fs.vertices.end());
            fs.vertices.erase(std::unique(fs.vertices.begin(), fs.vertices.end()), fs.vertices.end());
            for (int v : fs.vertices)
                if (v < 0 || v >= nv) throw UnknownVertex("lattice face refers to unknown vertex " + std::to_string(v));
            if (static_cast<int>(fs.vertices.size()) < fs.dim + 1 ||
                affine_rank(gather(c.vertices_, fs.vertices)) < fs.dim)
                throw InvalidLattice("lattice face is degenerate: " + describe(fs.vertices));
            add_face(fs.dim, fs.vertices);
        }
    }
    for (const auto& cell : cells) {
        c.index_[n].emplace(cell, static_cast<int>(c.faces_[n].size()));
        c.faces_[n].push_back(Face{n, cell, true, {}, {}});
    }

    // Downward and upward adjacency.
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<int>> incident(nv);
        for (int g = 0; g < static_cast<int>(c.faces_[k - 1].size()); ++g)
            for (int v : c.faces_[k - 1][g].vertices) incident[v].push_back(g);
        std::vector<int> stamp(c.faces_[k - 1].size(), -1);
        for (int fid = 0; fid < static_cast<int>(c.faces_[k].size()); ++fid) {
            Face& fc = c.faces_[k][fid];
            std::vector<int> candidates;
            for (int v : fc.vertices)
                for (int g : incident[v]) {
                    if (stamp[g] == fid) continue;
                    stamp[g] = fid;
                    if (is_subset(c.faces_[k - 1][g].vertices, fc.vertices)) candidates.push_back(g);
                }
            // A face of one cell may lie inside a larger face of another.
            for (int g : candidates) {
                const auto& gv = c.faces_[k - 1][g].vertices;
                bool maximal = true;
                for (int h : candidates)
                    if (h != g && c.faces_[k - 1][h].vertices.size() > gv.size() &&
                        is_subset(gv, c.faces_[k - 1][h].vertices))
                        maximal = false;
                if (!maximal) continue;
                fc.subfaces.push_back(g);
                c.faces_[k - 1][g].cofaces.push_back(fid);
            }
            std::sort(fc.subfaces.begin(), fc.subfaces.end());
        }
    }

    c.vertex_cells_.assign(nv, {});
    for (int i = 0; i < static_cast<int>(c.faces_[n].size()); ++i)
        for (int v : c.faces_[n][i].vertices) c.vertex_cells_[v].push_back(i);

    if (c.kind_ == ComplexKind::polytopal) {
        for (int k = 1; k < n; ++k)
            for (const auto& fc : c.faces_[k]) {
                if (fc.cofaces.empty())
                    throw InvalidLattice("lattice face lies in no higher face: " + describe(fc.vertices));
                if (static_cast<int>(fc.subfaces.size()) < k + 1)
                    throw InvalidLattice("lattice face is missing boundary faces: " + describe(fc.vertices));
            }
        for (const auto& cell : c.faces_[n])
            if (static_cast<int>(cell.subfaces.size()) < n + 1)
                throw InvalidLattice("cell is missing boundary faces: " + describe(cell.vertices));
        // Two cells must meet in a common face of the lattice (or not at all).
        auto closure = [&](int cell) {
            std::set<std::vector<int>> out;
            std::vector<std::pair<int, int>> todo{{n, cell}};
            while (!todo.empty()) {
                auto [k, id] = todo.back();
                todo.pop_back();
                const Face& fc = c.faces_[k][id];
                if (!out.insert(fc.vertices).second) continue;
                for (int sub : fc.subfaces) todo.push_back({k - 1, sub});
            }
            return out;
        };
        std::vector<std::set<std::vector<int>>> closures;
        for (int i = 0; i < static_cast<int>(c.faces_[n].size()); ++i) closures.push_back(closure(i));
        for (int i = 0; i < static_cast<int>(c.faces_[n].size()); ++i) {
            std::set<int> neighbours;
            for (int v : c.faces_[n][i].vertices)
                for (int j : c.vertex_cells_[v])
                    if (j > i) neighbours.insert(j);
            for (int j : neighbours) {
                std::vector<int> common;
                std::set_intersection(c.faces_[n][i].vertices.begin(), c.faces_[n][i].vertices.end(),
                                      c.faces_[n][j].vertices.begin(), c.faces_[n][j].vertices.end(),
                                      std::back_inserter(common));
                if (!closures[i].count(common) || !closures[j].count(common))
                    throw InvalidLattice("cells " + describe(c.faces_[n][i].vertices) + " and " +
                                         describe(c.faces_[n][j].vertices) + " do not meet in a face");
            }
        }
    }

    // Codimension-one faces are interior iff they bound exactly two cells; lower faces
    // are boundary as soon as one face above them is.
    for (auto& fc : c.faces_[n - 1]) fc.interior = fc.cofaces.size() == 2;
    for (int k = n - 2; k >= 0; --k)
        for (auto& fc : c.faces_[k]) {
            fc.interior = !fc.cofaces.empty();
            for (int up : fc.cofaces)
                if (!c.faces_[k + 1][up].interior) {
                    fc.interior = false;
                    break;
                }
        }
    // Boundary faces impose no smoothness condition and may be slightly bent.
    for (int k = 1; k < n; ++k)
        for (const auto& fc : c.faces_[k])
            if (fc.interior && affine_rank(gather(c.vertices_, fc.vertices)) != k)
                throw InvalidLattice("interior face is not a flat " + std::to_string(k) +
                                     "-polytope: " + describe(fc.vertices));
    return c;
}

namespace {

// Vertex sets of the faces making up the link of v, grouped by dimension.
struct LinkData {
    std::vector<std::vector<int>> facets;             // ids of (n-1)-faces of the complex
    std::vector<std::set<int>> faces_by_dim;          // ids of faces of the complex in the link
};

LinkData link_data(const CellComplex& c, int v) {
    const int n = c.dimension();
    LinkData ld;
    ld.faces_by_dim.assign(n, {});
    auto contains_v = [&](const Face& fc) { return std::binary_search(fc.vertices.begin(), fc.vertices.end(), v); };
    std::set<int> facet_ids;
    for (int cell : c.cells_containing(v))
        for (int g : c.face(n, cell).subfaces)
            if (!contains_v(c.face(n - 1, g))) facet_ids.insert(g);
    std::vector<int> frontier(facet_ids.begin(), facet_ids.end());
    ld.faces_by_dim[n - 1] = facet_ids;
    for (int k = n - 1; k > 0; --k) {
        std::set<int> below;
        for (int g : ld.faces_by_dim[k])
            for (int h : c.face(k, g).subfaces) below.insert(h);
        ld.faces_by_dim[k - 1] = below;
    }
    return ld;
}

}  // namespace

ValidationReport validate_manifold(const CellComplex& c) {
    ValidationReport rep;
    const int n = c.dimension();
    for (int v = 0; v < c.num_vertices(); ++v)
        if (c.face(0, v).cofaces.empty() && c.cells_containing(v).empty())
            rep.violations.push_back("impure: vertex " + std::to_string(v) + " lies in no cell");
    for (int k = 0; k < n; ++k)
        for (const auto& fc : c.faces(k))
            if (fc.cofaces.empty() && k > 0)
                rep.violations.push_back("impure: face " + describe(fc.vertices) + " lies in no cell");
    for (const auto& fc : c.faces(n - 1))
        if (fc.cofaces.size() > 2)
            rep.violations.push_back("face " + describe(fc.vertices) + " lies in " +
                                     std::to_string(fc.cofaces.size()) + " cells");
    if (n < 2) return rep;

    for (int v = 0; v < c.num_vertices(); ++v) {
        if (c.cells_containing(v).empty()) continue;
        const bool interior = c.vertex_is_interior(v);
        (interior ? rep.interior_vertices : rep.boundary_vertices)++;
        LinkData ld = link_data(c, v);
        const std::string who = "vertex " + std::to_string(v) + ": ";

        long chi = 0;
        for (int k = 0; k < n; ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(ld.faces_by_dim[k].size());
        long expected = interior ? 1 + ((n - 1) % 2 ? -1 : 1) : 1;
        if (chi != expected)
            rep.violations.push_back(who + "link has Euler characteristic " + std::to_string(chi) + ", expected " +
                                     std::to_string(expected));

        // Connectedness through link vertices and edges.
        std::vector<int> verts(ld.faces_by_dim[0].begin(), ld.faces_by_dim[0].end());
        std::vector<int> parent(c.num_vertices());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        if (n >= 2)
            for (int e : ld.faces_by_dim[1]) {
                const auto& ev = c.face(1, e).vertices;
                for (std::size_t i = 1; i < ev.size(); ++i) parent[find(ev[i])] = find(ev[0]);
            }
        std::set<int> roots;
        for (int w : verts) roots.insert(find(w));
        if (roots.size() > 1) rep.violations.push_back(who + "link is disconnected");

        // Link ridges in at most two link facets.
        std::map<int, int> ridge_use;
        for (int g : ld.faces_by_dim[n - 1])
            for (int h : c.face(n - 1, g).subfaces) ridge_use[h]++;
        for (auto [h, cnt] : ridge_use)
            if (cnt > 2)
                rep.violations.push_back(who + "link ridge " + describe(c.face(n - 2, h).vertices) + " lies in " +
                                         std::to_string(cnt) + " link facets");

        // Each link vertex needs a connected neighbourhood inside the link.
        if (n >= 3)
            for (int w : verts) {
                std::vector<int> around;
                for (int g : ld.faces_by_dim[n - 1]) {
                    const auto& gv = c.face(n - 1, g).vertices;
                    if (std::binary_search(gv.begin(), gv.end(), w)) around.push_back(g);
                }
                std::vector<int> comp(around.size());
                std::iota(comp.begin(), comp.end(), 0);
                std::function<int(int)> cf = [&](int x) { return comp[x] == x ? x : comp[x] = cf(comp[x]); };
                for (std::size_t i = 0; i < around.size(); ++i)
                    for (std::size_t j = i + 1; j < around.size(); ++j) {
                        const auto& si = c.face(n - 1, around[i]).subfaces;
                        const auto& sj = c.face(n - 1, around[j]).subfaces;
                        for (int h : si) {
                            const auto& hv = c.face(n - 2, h).vertices;
                            if (std::binary_search(hv.begin(), hv.end(), w) &&
                                std::find(sj.begin(), sj.end(), h) != sj.end())
                                comp[cf(i)] = cf(j);
                        }
                    }
                std::set<int> cr;
                for (std::size_t i = 0; i < around.size(); ++i) cr.insert(cf(i));
                if (cr.size() > 1)
                    rep.violations.push_back(who + "link is pinched at vertex " + std::to_string(w) +
                                             " (edge {" + std::to_string(std::min(v, w)) + "," +
                                             std::to_string(std::max(v, w)) + "} is singular)");
            }
    }
    return rep;
}

namespace {

CellComplex restrict_complex(const CellComplex& c, const std::vector<int>& cell_ids, std::vector<int>& global) {
    const int n = c.dimension();
    std::set<int> used;
    for (int id : cell_ids)
        for (int v : c.face(n, id).vertices) used.insert(v);
    global.assign(used.begin(), used.end());
    std::vector<int> local(c.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(global.size()); ++i) local[global[i]] = i;
    auto relabel = [&](const std::vector<int>& vs) {
        std::vector<int> out;
        for (int v : vs) out.push_back(local[v]);
        return out;
    };
    std::vector<Coordinate> coords;
    for (int g : global) coords.push_back(c.vertices()[g]);
    std::vector<std::vector<int>> cells;
    for (int id : cell_ids) cells.push_back(relabel(c.face(n, id).vertices));
    if (c.kind() == ComplexKind::simplicial) return build_complex(coords, cells, std::nullopt, n);
    std::vector<std::set<int>> keep(n);
    for (int id : cell_ids)
        for (int g : c.face(n, id).subfaces) keep[n - 1].insert(g);
    for (int k = n - 1; k > 1; --k)
        for (int g : keep[k])
            for (int h : c.face(k, g).subfaces) keep[k - 1].insert(h);
    std::vector<FaceSpec> faces;
    for (int k = 1; k < n; ++k)
        for (int g : keep[k]) faces.push_back({k, relabel(c.face(k, g).vertices)});
    return build_complex(coords, cells, faces, n);
}

}  // namespace

StarComplex star(const CellComplex& c, int v) {
    if (v < 0 || v >= c.num_vertices()) throw UnknownVertex("unknown vertex " + std::to_string(v));
    auto cell_ids = c.cells_containing(v);
    if (cell_ids.empty()) throw UnknownVertex("vertex " + std::to_string(v) + " lies in no cell");
    StarComplex s;
    s.base = restrict_complex(c, cell_ids, s.global_vertex);
    s.apex = static_cast<int>(std::lower_bound(s.global_vertex.begin(), s.global_vertex.end(), v) -
                              s.global_vertex.begin());
    s.apex_is_interior = c.vertex_is_interior(v);
    return s;
}

CellComplex link(const CellComplex& c, int v) {
    if (v < 0 || v >= c.num_vertices()) throw UnknownVertex("unknown vertex " + std::to_string(v));
    const int n = c.dimension();
    if (n < 2) throw Error("link needs a complex of dimension at least 2");
    LinkData ld = link_data(c, v);
    std::set<int> used(ld.faces_by_dim[0].begin(), ld.faces_by_dim[0].end());
    std::vector<int> global(used.begin(), used.end());
    std::vector<int> local(c.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(global.size()); ++i) local[global[i]] = i;
    auto relabel = [&](const std::vector<int>& vs) {
        std::vector<int> out;
        for (int x : vs) out.push_back(local[x]);
        return out;
    };
    std::vector<Coordinate> coords;
    for (int g : global) coords.push_back(c.vertices()[g]);
    std::vector<std::vector<int>> cells;
    bool simplicial = true;
    for (int g : ld.faces_by_dim[n - 1]) {
        cells.push_back(relabel(c.face(n - 1, g).vertices));
        simplicial = simplicial && static_cast<int>(cells.back().size()) == n;
    }
    if (simplicial) return build_complex(coords, cells, std::nullopt, n - 1);
    std::vector<FaceSpec> faces;
    for (int k = 1; k < n - 1; ++k)
        for (int g : ld.faces_by_dim[k]) faces.push_back({k, relabel(c.face(k, g).vertices)});
    return build_complex(coords, cells, faces, n - 1);
}

CellComplex cone(const CellComplex& c) {
    const int n = c.dimension();
    const int apex = c.num_vertices();
    std::vector<Coordinate> coords;
    for (const auto& p : c.vertices()) {
        Coordinate q{Rational(1)};
        q.insert(q.end(), p.begin(), p.end());
        coords.push_back(std::move(q));
    }
    coords.push_back(Coordinate(c.ambient_dimension() + 1, Rational(0)));
    auto with_apex = [&](std::vector<int> vs) {
        vs.push_back(apex);
        return vs;
    };
    std::vector<std::vector<int>> cells;
    for (const auto& cell : c.cells()) cells.push_back(with_apex(cell.vertices));
    if (c.kind() == ComplexKind::simplicial) return build_complex(coords, cells, std::nullopt, n + 1);
    std::vector<FaceSpec> faces;
    for (int v = 0; v < c.num_vertices(); ++v) faces.push_back({1, {v, apex}});
    for (int k = 1; k < n; ++k)
        for (const auto& fc : c.faces(k)) {
            faces.push_back({k, fc.vertices});
            faces.push_back({k + 1, with_apex(fc.vertices)});
        }
    for (const auto& cell : c.cells()) faces.push_back({n, cell.vertices});
    return build_complex(coords, cells, faces, n + 1);
}

StarComplex cone_star(const CellComplex& c) {
    StarComplex s;
    s.base = cone(c);
    s.apex = c.num_vertices();
    s.apex_is_interior = false;
    s.global_vertex.resize(s.base.num_vertices());
    std::iota(s.global_vertex.begin(), s.global_vertex.end(), 0);
    return s;
}

}  // namespace splinedim
