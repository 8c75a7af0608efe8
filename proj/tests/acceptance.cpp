// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// Exit status is 0 iff the failing set equals the --expect-fail list (default empty).

#include "reference_tables.hpp"
#include "splinedim/bounds.hpp"
#include "splinedim/complex.hpp"
#include "splinedim/idealdims.hpp"
#include "splinedim/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace splinedim;
using namespace reftables;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

template <class T>
std::string str(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

long as_long(std::size_t x) { return static_cast<long>(x); }

int interior_vertex(const CellComplex& c) {
    for (int v = 0; v < c.num_vertices(); ++v)
        if (c.vertex_is_interior(v)) return v;
    throw Error("no interior vertex");
}

Outcome criterion1() {
    Outcome o;
    CellComplex c = generate_example(Example::ms3d, 1);
    LowerBound bound(c, 2);
    std::string mismatches;
    const auto series = lb_series();
    for (const auto& row : series[0].rows) {
        Integer got = bound.value(row.d);
        if (got != row.lb) mismatches += " d=" + str(row.d) + ":" + got.get_str() + "!=" + str(row.lb);
    }
    if (!mismatches.empty()) o.fail("mismatch" + mismatches);
    return o;
}

Outcome criterion2() {
    Outcome o;
    int checked = 0;
    auto series = lb_series();
    for (std::size_t i = 1; i < series.size(); ++i) {
        const auto& s = series[i];
        LowerBound bound(generate_example(s.example, 1), s.r, mode_for(s.polytopal));
        for (const auto& row : s.rows) {
            ++checked;
            if (bound.value(row.d) != row.lb)
                o.fail(example_name(s.example) + " r=" + str(s.r) + " d=" + str(row.d) + ": " +
                       bound.value(row.d).get_str() + " != " + str(row.lb));
        }
    }
    if (o.pass) o.detail = str(checked) + " values";
    return o;
}

Outcome criterion3() {
    Outcome o;
    int checked = 0;
    for (const auto& pc : reference_cubics()) {
        ++checked;
        CubicPolynomial p = lb_polynomial(generate_example(pc.example, 1), pc.r, mode_for(pc.polytopal));
        if (!(p == pc.poly))
            o.fail(example_name(pc.example) + " r=" + str(pc.r) + ": " + p.to_string() + " != " + pc.poly.to_string());
    }
    if (o.pass) o.detail = str(checked) + " cubics";
    return o;
}

// Compares oracle dimensions against the gendim column for the given series.
void check_gendim(Outcome& o, const Series& s, long d_lo, long d_hi, std::uint64_t seed, int& checked) {
    CellComplex c = generate_example(s.example, seed);
    for (const auto& row : s.rows) {
        if (row.d < d_lo || row.d > d_hi || row.gendim < 0) continue;
        ++checked;
        long got = as_long(spline_dim(c, row.d, s.r, FieldSpec::prime_field(seed)));
        if (got != row.gendim)
            o.fail(example_name(s.example) + " r=" + str(s.r) + " d=" + str(row.d) + " seed=" + str(seed) + ": " +
                   str(got) + " != " + str(row.gendim));
    }
}

Outcome criterion4() {
    Outcome o;
    int checked = 0;
    const auto series = lb_series();
    for (std::uint64_t seed : {1, 2}) check_gendim(o, series[0], 0, 10, seed, checked);
    if (o.pass) o.detail = str(checked) + " dims, seeds 1 and 2";
    return o;
}

Outcome criterion5() {
    Outcome o;
    int checked = 0;
    auto series = lb_series();
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].example != Example::cube_octahedron) check_gendim(o, series[i], 0, 100, 1, checked);
    if (o.pass) o.detail = str(checked) + " dims";
    return o;
}

Outcome criterion6() {
    Outcome o;
    int checked = 0;
    for (const auto& s : lb_series()) {
        if (s.example != Example::cube_octahedron) continue;
        if (s.r == 1) check_gendim(o, s, 2, 6, 1, checked);
        if (s.r == 2) check_gendim(o, s, 9, 11, 1, checked);
    }
    if (o.pass) o.detail = str(checked) + " dims";
    return o;
}

Outcome criterion7() {
    Outcome o;
    CellComplex c = generate_example(Example::octahedron_star, 1);
    StarComplex s = star(c, interior_vertex(c));
    const std::vector<std::pair<long, long>> expected{{3, 10}, {8, 108}, {9, 152}, {10, 204}};
    for (auto [d, want] : expected) {
        long got = as_long(homog_spline_dim(s, d, 2));
        if (got != want) o.fail("d=" + str(d) + ": " + str(got) + " != " + str(want));
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    int checked = 0;
    for (Example e : {Example::ms3d, Example::square_torus})
        for (std::uint64_t seed : {1, 2}) {
            CellComplex c = generate_example(e, seed);
            StarComplex cs = cone_star(c);
            for (int r = 0; r <= 2; ++r)
                for (long d = 0; d <= 8; ++d) {
                    ++checked;
                    FieldSpec f = FieldSpec::prime_field(seed);
                    std::size_t a = spline_dim(c, d, r, f), b = homog_spline_dim(cs, d, r, f);
                    if (a != b)
                        o.fail(example_name(e) + " seed=" + str(seed) + " r=" + str(r) + " d=" + str(d) + ": " +
                               str(a) + " != " + str(b));
                }
        }
    if (o.pass) o.detail = str(checked) + " pairs";
    return o;
}

Outcome criterion9() {
    Outcome o;
    int edges = 0, vertices = 0;
    for (Example e : all_examples()) {
        CellComplex c = generate_example(e, 1);
        for (int v = 0; v < c.num_vertices(); ++v) {
            if (c.cells_containing(v).empty()) continue;
            StarComplex s = star(c, v);
            for (int r = 0; r <= 3; ++r) {
                for (int edge : s.base.interior_faces(1)) {
                    EdgeData ed = edge_data(s.base, edge, r);
                    auto gens = edge_generators(s, edge, r);
                    for (long d = 0; d <= 3L * r + 4; ++d) {
                        ++edges;
                        Integer want = dim_edge_ideal_formula(ed, d, r);
                        long got = as_long(dim_ideal_oracle(gens, d));
                        if (want != got)
                            o.fail(example_name(e) + " vertex " + str(v) + " r=" + str(r) + " d=" + str(d) +
                                   ": edge oracle " + str(got) + " != formula " + want.get_str());
                    }
                }
                if (!s.apex_is_interior) continue;
                auto gens = vertex_generators(s, r);
                for (long d = d_gamma(s, r) + 1; d <= 3L * r + 2; ++d) {
                    ++vertices;
                    long got = as_long(dim_ideal_oracle(gens, d));
                    if (Integer(got) != binom_trunc(d + 2, 2))
                        o.fail(example_name(e) + " vertex " + str(v) + " r=" + str(r) + " d=" + str(d) +
                               ": dim J(vertex) " + str(got) + " != " + binom_trunc(d + 2, 2).get_str());
                }
            }
        }
    }
    if (o.pass) o.detail = str(edges) + " edge checks, " + str(vertices) + " vertex checks";
    return o;
}

Outcome criterion10() {
    Outcome o;
    const std::vector<std::tuple<Example, int, long>> cases{
        {Example::ms3d, 2, 7},           {Example::ms3d, 3, 10},           {Example::ms3d, 4, 13},
        {Example::cube_octahedron, 1, 5}, {Example::cube_octahedron, 2, 9}, {Example::cube_octahedron, 3, 13}};
    for (auto [e, r, want] : cases) {
        long got = initial_degree(generate_example(e, 1), r);
        if (got != want) o.fail(example_name(e) + " r=" + str(r) + ": " + str(got) + " != " + str(want));
    }
    return o;
}

// Global bound assembled from coned ideal dimensions summed degree by degree and
// from Euler characteristics of the vertex stars.
class AssembledBound {
public:
    AssembledBound(const CellComplex& c, int r, NGammaMode mode) : c_(c), r_(r) {
        for (int e : c.interior_faces(1)) edges_.push_back(edge_data(c, e, r));
        for (int v = 0; v < c.num_vertices(); ++v)
            if (!c.cells_containing(v).empty()) n_total_ += star_term(star(c, v), mode);
    }

    Integer value(long d) const {
        Integer chi_prime = 0;
        for (long i = 0; i <= d; ++i) {
            chi_prime += c_.f_interior(2) * dim_twoface_ideal(i, r_);
            for (const auto& ed : edges_) chi_prime -= dim_edge_ideal_formula(ed, i, r_);
        }
        const long leading = c_.f(3) - c_.f_interior(2) + c_.f_interior(1);
        return leading * binom_trunc(d + 3, 3) + chi_prime - c_.f_interior(0) * binom_trunc(r_ + 3, 3) + n_total_;
    }

private:
    Integer star_term(const StarComplex& s, NGammaMode mode) const {
        const int r = r_;
        // C(i+2,2) minus the star bound, written through chi of the star's ideals.
        auto deficit = [&](long i) -> Integer {
            Integer chi = star_face_edge_chi(s, i, r);
            return s.apex_is_interior ? Integer(-binom_trunc(i + 2, 2) - chi) : Integer(-chi);
        };
        Integer n = 0;
        const long signed_until = s.apex_is_interior ? d_gamma(s, r) : r;
        for (long i = r + 1; i <= signed_until; ++i) n += deficit(i);
        for (long i = std::max<long>(signed_until + 1, r + 1); i <= 3L * r + 1; ++i) {
            Integer x = deficit(i);
            if (x > 0) n += x;
        }
        if (mode == NGammaMode::polytopal_extended)
            for (long i = 3L * r + 2; i <= 10L * (r + 1); ++i) {
                Integer x = deficit(i);
                if (x <= 0) break;
                n += x;
            }
        return n;
    }

    const CellComplex& c_;
    int r_;
    std::vector<EdgeData> edges_;
    Integer n_total_ = 0;
};

Outcome criterion11() {
    Outcome o;
    int checked = 0;
    for (Example e : all_examples()) {
        CellComplex c = generate_example(e, 1);
        const bool poly = c.kind() == ComplexKind::polytopal;
        for (int r = 0; r <= 4; ++r) {
            LowerBound bound(c, r, mode_for(poly));
            AssembledBound assembled(c, r, mode_for(poly));
            for (long d = 0; d <= 20; ++d) {
                ++checked;
                Integer a = bound.value(d), b = assembled.value(d);
                if (a != b)
                    o.fail(example_name(e) + " r=" + str(r) + " d=" + str(d) + ": " + a.get_str() + " != " + b.get_str());
            }
        }
    }
    if (o.pass) o.detail = str(checked) + " values";
    return o;
}

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> expect_fail, only;
    CLI::App app{"acceptance criteria"};
    app.add_option("--expect-fail", expect_fail, "criteria documented as failing");
    app.add_option("--only", only, "run only these criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "LB row, Morgan-Scott r=2, d=0..10", 1, criterion1},
        {2, "LB columns, Morgan-Scott r=3,4, cavity, torus, cube", 1, criterion2},
        {3, "reference closed-form cubics", 1, criterion3},
        {4, "oracle dims, Morgan-Scott r=2, d=0..10, two seeds", 120, criterion4},
        {5, "oracle dims, Morgan-Scott r=3,4, cavity, torus", 900, criterion5},
        {6, "polytopal oracle dims, cube/octahedron", 1200, criterion6},
        {7, "homogeneous dims on the octahedron star", 0, criterion7},
        {8, "cone identity, Morgan-Scott and torus", 0, criterion8},
        {9, "edge and vertex ideal dimensions", 0, criterion9},
        {10, "initial degrees", 0, criterion10},
        {11, "bound equals the chi-prime assembly", 1, criterion11},
    };

    std::set<int> failed;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds)
            o.fail("took " + str(secs) + " s, budget " + str(c.budget_seconds) + " s");
        if (!o.pass) failed.insert(c.id);
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << timing
                  << "]" << (o.detail.empty() ? "" : "  " + o.detail) << std::endl;
    }

    std::set<int> expected;
    for (int id : expect_fail)
        if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) expected.insert(id);
    std::cout << "failed: " << failed.size() << " of " << (only.empty() ? criteria.size() : only.size()) << std::endl;
    if (failed != expected) {
        std::cout << "failing set differs from the documented one" << std::endl;
        return 1;
    }
    return 0;
}
