#include "splinedim/bounds.hpp"

#include <algorithm>

namespace splinedim {

Integer binom_trunc(const Integer& n, int k) {
    if (k < 0) throw Error("binomial lower index must be non-negative");
    if (n < k) return 0;
    Integer out;
    mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return out;
}

Integer binom_trunc(long n, int k) { return binom_trunc(Integer(n), k); }

EdgeData edge_data(int n, int r, int edge_id) {
    if (n < 2) throw InvalidEdgeValence("edge lies in " + std::to_string(n) + " two-faces; at least 2 required");
    if (r < 0) throw Error("smoothness r must be non-negative");
    EdgeData e;
    e.edge_id = edge_id;
    e.n = n;
    e.t = std::min(n, r + 2);
    e.q = e.t * (r + 1) / (e.t - 1);
    e.a = e.t * (r + 1) - (e.t - 1) * e.q;
    e.b = e.t - 1 - e.a;
    return e;
}

EdgeData edge_data(const CellComplex& complex, int edge_id, int r) {
    const Face& fc = complex.face(1, edge_id);
    if (!fc.interior) throw InvalidEdgeValence("edge " + std::to_string(edge_id) + " is not interior");
    return edge_data(static_cast<int>(fc.cofaces.size()), r, edge_id);
}

int d_gamma_from_f1(int f1, int r) {
    if (f1 < 4) throw MalformedStar("closed star with " + std::to_string(f1) + " interior edges");
    if (f1 == 4) return 2 * r;
    if (f1 == 5) return (5 * r + 2) / 3;
    return (3 * r + 1) / 2;
}

int d_gamma(const StarComplex& s, int r) {
    if (!s.apex_is_interior) throw NotClosedStar("D_gamma needs a closed star");
    return d_gamma_from_f1(s.base.f_interior(1), r);
}

namespace {

struct StarData {
    long f2o = 0;
    std::vector<EdgeData> edges;
};

StarData star_data(const CellComplex& base, int r) {
    StarData sd;
    sd.f2o = base.f_interior(2);
    for (int e : base.interior_faces(1)) sd.edges.push_back(edge_data(base, e, r));
    return sd;
}

// leading * C(d+2,2) + (f2o - sum t) C(d+1-r,2) + sum (a C(d+1-q,2) + b C(d+2-q,2))
Integer star_bound(const StarData& sd, long d, int r, int leading) {
    Integer sum_t = 0, tail = 0;
    for (const auto& e : sd.edges) {
        sum_t += e.t;
        tail += e.a * binom_trunc(d + 1 - e.q, 2) + e.b * binom_trunc(d + 2 - e.q, 2);
    }
    return leading * binom_trunc(d + 2, 2) + (sd.f2o - sum_t) * binom_trunc(d + 1 - r, 2) + tail;
}

Integer positive_part(const Integer& x) { return x > 0 ? x : Integer(0); }

}  // namespace

Integer lb_closed_star(const StarComplex& s, long d, int r) {
    if (!s.apex_is_interior) throw NotClosedStar("closed-star bound needs an interior apex");
    return star_bound(star_data(s.base, r), d, r, 2);
}

Integer lb_open_star(const StarComplex& s, long d, int r) {
    if (s.apex_is_interior) throw Error("open-star bound needs a boundary apex");
    return star_bound(star_data(s.base, r), d, r, 1);
}

VertexSummary vertex_summary(const CellComplex& complex, int v, int r, NGammaMode mode) {
    StarComplex s = star(complex, v);
    StarData sd = star_data(s.base, r);
    VertexSummary vs;
    vs.vertex_id = v;
    vs.is_interior = s.apex_is_interior;
    const int leading = vs.is_interior ? 2 : 1;
    auto term = [&](long d) -> Integer {
        Integer value = star_bound(sd, d, r, leading);
        vs.lb_star_values[d] = value;
        return binom_trunc(d + 2, 2) - value;
    };
    long signed_until = r;  // last degree summed without clipping
    if (vs.is_interior) {
        vs.d_gamma = d_gamma_from_f1(s.base.f_interior(1), r);
        signed_until = vs.d_gamma;
    }
    for (long d = r + 1; d <= signed_until; ++d) vs.n_gamma += term(d);
    const long stop = 3L * r + 1;
    for (long d = std::max<long>(signed_until + 1, r + 1); d <= stop; ++d) vs.n_gamma += positive_part(term(d));
    if (mode == NGammaMode::polytopal_extended) {
        const long cap = 10L * (r + 1);
        for (long d = std::max<long>(stop + 1, r + 1); d <= cap; ++d) {
            Integer t = term(d);
            if (t <= 0) break;
            vs.n_gamma += t;
        }
    }
    return vs;
}

Integer n_gamma(const CellComplex& complex, int v, int r, NGammaMode mode) {
    return vertex_summary(complex, v, r, mode).n_gamma;
}

Rational CubicPolynomial::operator()(const Rational& d) const {
    return ((coefficients[3] * d + coefficients[2]) * d + coefficients[1]) * d + coefficients[0];
}

std::string CubicPolynomial::to_string() const {
    std::string out;
    for (int k = 3; k >= 0; --k) {
        Rational c = coefficients[k];
        if (c == 0) continue;
        bool negative = c < 0;
        if (negative) c = -c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mag = c.get_den() == 1 ? c.get_str() : "(" + c.get_str() + ")";
        if (k == 0)
            out += c.get_str().find('/') == std::string::npos ? c.get_str() : mag;
        else {
            if (c != 1) out += mag;
            out += k == 1 ? "d" : "d^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

CubicPolynomial make_cubic(const Rational& c3, const Rational& c2, const Rational& c1, const Rational& c0) {
    CubicPolynomial p;
    p.coefficients = {c0, c1, c2, c3};
    return p;
}

LowerBound::LowerBound(const CellComplex& complex, int r, NGammaMode mode) : r_(r) {
    if (complex.dimension() != 3) throw Error("the lower bound is defined for 3-dimensional complexes");
    if (r < 0) throw Error("smoothness r must be non-negative");
    f2o_ = complex.f_interior(2);
    f0o_ = complex.f_interior(0);
    leading_ = complex.f(3) - f2o_ + complex.f_interior(1);
    for (int e : complex.interior_faces(1)) {
        edges_.push_back(edge_data(complex, e, r));
        sum_t_ += edges_.back().t;
    }
    for (int v = 0; v < complex.num_vertices(); ++v)
        if (!complex.cells_containing(v).empty()) vertices_.push_back(vertex_summary(complex, v, r, mode));
}

Integer LowerBound::n_gamma_total() const {
    Integer s = 0;
    for (const auto& v : vertices_) s += v.n_gamma;
    return s;
}

Integer LowerBound::chi_prime(long d) const {
    Integer out = (f2o_ - sum_t_) * binom_trunc(d + 2 - r_, 3);
    for (const auto& e : edges_) out += e.a * binom_trunc(d + 2 - e.q, 3) + e.b * binom_trunc(d + 3 - e.q, 3);
    return out;
}

Integer LowerBound::value(long d) const {
    return leading_ * binom_trunc(d + 3, 3) + chi_prime(d) - f0o_ * binom_trunc(r_ + 3, 3) + n_gamma_total();
}

CubicPolynomial LowerBound::polynomial() const {
    // Every term is coefficient * C(d + shift, 3).
    std::map<long, Integer> by_shift;
    by_shift[3] += leading_;
    by_shift[2 - r_] += f2o_ - sum_t_;
    for (const auto& e : edges_) {
        by_shift[2 - e.q] += e.a;
        by_shift[3 - e.q] += e.b;
    }
    CubicPolynomial p;
    for (auto& c : p.coefficients) c = 0;
    p.valid_from = 0;
    for (const auto& [shift, coef] : by_shift) {
        if (coef == 0) continue;
        // C(d+s,3) = (d+s)(d+s-1)(d+s-2)/6 as a polynomial in d; exact for d + s >= 0.
        Rational s0(shift), s1(shift - 1), s2(shift - 2);
        Rational e3 = 1, e2 = s0 + s1 + s2, e1 = s0 * s1 + s0 * s2 + s1 * s2, e0 = s0 * s1 * s2;
        Rational k = Rational(coef) / 6;
        p.coefficients[3] += k * e3;
        p.coefficients[2] += k * e2;
        p.coefficients[1] += k * e1;
        p.coefficients[0] += k * e0;
        p.valid_from = std::max(p.valid_from, -shift);
    }
    p.coefficients[0] += Rational(n_gamma_total() - f0o_ * binom_trunc(r_ + 3, 3));
    return p;
}

Integer lb(const CellComplex& complex, long d, int r, NGammaMode mode) {
    return LowerBound(complex, r, mode).value(d);
}

CubicPolynomial lb_polynomial(const CellComplex& complex, int r, NGammaMode mode) {
    return LowerBound(complex, r, mode).polynomial();
}

}  // namespace splinedim
