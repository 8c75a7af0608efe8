#include "splinedim/polynomial.hpp"

#include "splinedim/linalg.hpp"

#include <functional>
#include <numeric>

namespace splinedim {

namespace {

// Exponents of total degree exactly `degree` in lex order (x1 largest first).
void homogeneous_exponents(int nvars, int degree, std::vector<Exponent>& out) {
    Exponent e(nvars, 0);
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == nvars - 1) {
            e[var] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[var] = k;
            rec(var + 1, left - k);
        }
    };
    if (nvars == 0) {
        if (degree == 0) out.push_back({});
        return;
    }
    rec(0, degree);
}

constexpr std::size_t kDenseKeyLimit = std::size_t(1) << 23;

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree, bool homogeneous)
    : nvars_(nvars), degree_(degree), homogeneous_(homogeneous) {
    if (degree >= 0) {
        if (homogeneous)
            homogeneous_exponents(nvars, degree, monomials_);
        else
            for (int k = 0; k <= degree; ++k) homogeneous_exponents(nvars, k, monomials_);
    }
    std::size_t space = 1;
    bool small = true;
    for (int i = 0; i < nvars && small; ++i) {
        space *= static_cast<std::size_t>(std::max(degree, 0) + 1);
        small = space <= kDenseKeyLimit;
    }
    if (small) {
        dense_.assign(space, -1);
        for (std::size_t i = 0; i < monomials_.size(); ++i) dense_[key(monomials_[i])] = static_cast<long>(i);
    } else {
        for (std::size_t i = 0; i < monomials_.size(); ++i) sparse_[key(monomials_[i])] = static_cast<long>(i);
    }
}

MonomialBasis MonomialBasis::homogeneous(int nvars, int degree) { return MonomialBasis(nvars, degree, true); }

MonomialBasis MonomialBasis::up_to(int nvars, int degree) { return MonomialBasis(nvars, degree, false); }

std::size_t MonomialBasis::key(const Exponent& e) const {
    std::size_t k = 0;
    for (int x : e) k = k * static_cast<std::size_t>(degree_ + 1) + static_cast<std::size_t>(x);
    return k;
}

long MonomialBasis::index(const Exponent& e) const {
    if (static_cast<int>(e.size()) != nvars_) return -1;
    int total = 0;
    for (int x : e) {
        if (x < 0 || x > degree_) return -1;
        total += x;
    }
    if (total > degree_ || (homogeneous_ && total != degree_)) return -1;
    std::size_t k = key(e);
    if (!dense_.empty()) return dense_[k];
    auto it = sparse_.find(k);
    return it == sparse_.end() ? -1 : it->second;
}

std::vector<Integer> primitive_vector(const std::vector<Rational>& v) {
    Integer l = lcm_of_denominators(v);
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer y = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
        out.push_back(std::move(y));
    }
    if (g == 0) throw Error("zero vector has no primitive form");
    int sign = 0;
    for (const auto& y : out)
        if (y != 0) {
            sign = y > 0 ? 1 : -1;
            break;
        }
    for (auto& y : out) {
        mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t());
        if (sign < 0) y = -y;
    }
    return out;
}

LinearForm hyperplane_through(const std::vector<std::vector<Rational>>& points, bool affine) {
    if (points.empty()) throw Error("hyperplane needs at least one point");
    std::size_t m = points[0].size();
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : points) {
        std::vector<Rational> row;
        if (affine) row.push_back(1);
        row.insert(row.end(), p.begin(), p.end());
        rows.push_back(std::move(row));
    }
    auto ker = dense_kernel(rows, m + (affine ? 1 : 0));
    if (ker.size() != 1) throw Error("points do not determine a unique hyperplane");
    LinearForm f;
    f.affine = affine;
    f.coefficients = primitive_vector(ker[0]);
    bool has_linear_part = false;
    for (std::size_t i = affine ? 1 : 0; i < f.coefficients.size(); ++i) has_linear_part |= f.coefficients[i] != 0;
    if (!has_linear_part) throw Error("degenerate hyperplane");
    return f;
}

std::vector<Term> power_terms(const LinearForm& form, int power) {
    const int total_vars = static_cast<int>(form.coefficients.size());
    std::vector<Exponent> exps;
    homogeneous_exponents(total_vars, power, exps);
    // multinomial(power; e) = power! / prod e_i!
    std::vector<Integer> fact(power + 1, 1);
    for (int i = 1; i <= power; ++i) fact[i] = fact[i - 1] * i;
    std::vector<Term> out;
    for (const auto& e : exps) {
        Integer c = fact[power];
        bool zero = false;
        for (int i = 0; i < total_vars && !zero; ++i) {
            if (e[i] == 0) continue;
            if (form.coefficients[i] == 0) {
                zero = true;
                break;
            }
            c /= fact[e[i]];
            Integer pw;
            mpz_pow_ui(pw.get_mpz_t(), form.coefficients[i].get_mpz_t(), static_cast<unsigned long>(e[i]));
            c *= pw;
        }
        if (zero) continue;
        Exponent ex = form.affine ? Exponent(e.begin() + 1, e.end()) : e;
        out.push_back({std::move(ex), std::move(c)});
    }
    return out;
}

}  // namespace splinedim
