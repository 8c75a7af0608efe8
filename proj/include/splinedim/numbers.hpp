#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace splinedim {

using Integer = mpz_class;
using Rational = mpq_class;
using Coordinate = std::vector<Rational>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p", "-p", "p/q"; rejects anything that looks like a float.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer lcm_of_denominators(const std::vector<Rational>& values);

}  // namespace splinedim
