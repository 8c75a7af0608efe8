#pragma once

#include "splinedim/numbers.hpp"

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

namespace splinedim {

using Exponent = std::vector<int>;

// Monomials in a fixed number of variables, either of one exact degree or of every
// degree up to a bound, in graded lexicographic order (x1 > x2 > ...).
class MonomialBasis {
public:
    static MonomialBasis homogeneous(int nvars, int degree);
    static MonomialBasis up_to(int nvars, int degree);

    std::size_t size() const { return monomials_.size(); }
    const Exponent& operator[](std::size_t i) const { return monomials_[i]; }
    int nvars() const { return nvars_; }
    int max_degree() const { return degree_; }
    // Position of the monomial, or -1 when it is not in the basis.
    long index(const Exponent& e) const;

private:
    MonomialBasis(int nvars, int degree, bool homogeneous);
    std::size_t key(const Exponent& e) const;

    int nvars_ = 0;
    int degree_ = 0;
    bool homogeneous_ = true;
    std::vector<Exponent> monomials_;
    std::vector<long> dense_;                    // used when the key space is small
    std::unordered_map<std::size_t, long> sparse_;
};

// Homogeneous or affine linear form with primitive integer coefficients
// (gcd 1, first nonzero entry positive). Affine forms store the constant first.
struct LinearForm {
    std::vector<Integer> coefficients;
    bool affine = false;

    int nvars() const { return static_cast<int>(coefficients.size()) - (affine ? 1 : 0); }
    bool operator==(const LinearForm& o) const { return affine == o.affine && coefficients == o.coefficients; }
};

// Normalizes a nonzero rational vector to a primitive integer vector.
std::vector<Integer> primitive_vector(const std::vector<Rational>& v);

// Hyperplane through the given points (affine form) or through the origin and the
// given points (homogeneous form). Throws if the points do not determine a hyperplane.
LinearForm hyperplane_through(const std::vector<std::vector<Rational>>& points, bool affine);

struct Term {
    Exponent exponent;  // over the polynomial variables (no homogenizing variable)
    Integer coefficient;
};

// Expansion of form^power. For affine forms the exponent omits the constant's
// variable, so terms have degrees 0..power.
std::vector<Term> power_terms(const LinearForm& form, int power);

}  // namespace splinedim
