#pragma once

#include "splinedim/complex.hpp"
#include "splinedim/numbers.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace splinedim {

struct InvalidEdgeValence : Error {
    using Error::Error;
};
struct NotClosedStar : Error {
    using Error::Error;
};
struct MalformedStar : Error {
    using Error::Error;
};

// C(n, k) for n >= k, and 0 whenever n < k (including negative n).
Integer binom_trunc(const Integer& n, int k);
Integer binom_trunc(long n, int k);

struct EdgeData {
    int edge_id = -1;
    int n = 0;  // 2-faces containing the edge
    int t = 0;
    int q = 0;
    int a = 0;
    int b = 0;
};

EdgeData edge_data(int n, int r, int edge_id = -1);
// The edge must be interior.
EdgeData edge_data(const CellComplex& complex, int edge_id, int r);

int d_gamma_from_f1(int interior_edges, int r);
int d_gamma(const StarComplex& star, int r);

Integer lb_closed_star(const StarComplex& star, long d, int r);
Integer lb_open_star(const StarComplex& star, long d, int r);

enum class NGammaMode { standard, polytopal_extended };

struct VertexSummary {
    int vertex_id = -1;
    bool is_interior = false;
    int d_gamma = 0;  // meaningful for interior vertices only
    Integer n_gamma = 0;
    std::map<long, Integer> lb_star_values;  // LB-closed or LB-open per summation degree
};

VertexSummary vertex_summary(const CellComplex& complex, int vertex_id, int r, NGammaMode mode = NGammaMode::standard);
Integer n_gamma(const CellComplex& complex, int vertex_id, int r, NGammaMode mode = NGammaMode::standard);

struct CubicPolynomial {
    std::array<Rational, 4> coefficients{};  // degree 0..3
    long valid_from = 0;

    Rational operator()(const Rational& d) const;
    std::string to_string() const;  // e.g. "(5/2)d^3 - 27d^2 + (187/2)d - 57"
    bool operator==(const CubicPolynomial& other) const { return coefficients == other.coefficients; }
};

CubicPolynomial make_cubic(const Rational& c3, const Rational& c2, const Rational& c1, const Rational& c0);

// All d-independent data of the global bound for fixed (complex, r, mode).
class LowerBound {
public:
    LowerBound(const CellComplex& complex, int r, NGammaMode mode = NGammaMode::standard);

    Integer value(long d) const;
    CubicPolynomial polynomial() const;

    int r() const { return r_; }
    long leading() const { return leading_; }              // f3 - f2o + f1o
    const std::vector<EdgeData>& edges() const { return edges_; }
    const std::vector<VertexSummary>& vertices() const { return vertices_; }
    Integer n_gamma_total() const;
    // (f2o - sum t) C(d+2-r,3) + sum (a C(d+2-q,3) + b C(d+3-q,3))
    Integer chi_prime(long d) const;

private:
    int r_;
    long leading_ = 0;
    long f2o_ = 0;
    long f0o_ = 0;
    long sum_t_ = 0;
    std::vector<EdgeData> edges_;
    std::vector<VertexSummary> vertices_;
};

Integer lb(const CellComplex& complex, long d, int r, NGammaMode mode = NGammaMode::standard);
CubicPolynomial lb_polynomial(const CellComplex& complex, int r, NGammaMode mode = NGammaMode::standard);

}  // namespace splinedim
