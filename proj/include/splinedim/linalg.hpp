#pragma once

#include "splinedim/numbers.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace splinedim {

struct FieldFailure : Error {
    using Error::Error;
};

struct SparseMatrix {
    struct Entry {
        std::uint32_t row;
        std::uint32_t col;
        Integer value;
    };

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Entry> entries;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c) {}

    // Appends; duplicates are summed by canonicalize().
    void add(std::size_t row, std::size_t col, Integer value);
    // Sorts row-major, merges duplicate positions and drops zeros.
    void canonicalize();
};

enum class FieldKind { exact_rational, prime_field };

struct FieldSpec {
    FieldKind kind = FieldKind::prime_field;
    std::uint64_t prime = 0;  // first prime to use; 0 draws every prime from the seed
    int retries = 2;          // number of independent primes
    std::uint64_t seed = 1;
    bool escalate = true;     // on disagreement, recompute over the rationals
    std::size_t exact_column_limit = 60000;

    static FieldSpec rational() {
        FieldSpec f;
        f.kind = FieldKind::exact_rational;
        f.retries = 1;
        return f;
    }
    static FieldSpec prime_field(std::uint64_t seed, int retries = 2) {
        FieldSpec f;
        f.seed = seed;
        f.retries = retries;
        return f;
    }
};

struct RankReport {
    std::size_t rank = 0;
    std::vector<std::uint64_t> primes;
    std::vector<std::size_t> prime_ranks;
    bool disagreement = false;
    bool escalated = false;
};

RankReport rank_report(const SparseMatrix& m, const FieldSpec& field);
std::size_t rank(const SparseMatrix& m, const FieldSpec& field);
std::size_t kernel_dim(const SparseMatrix& m, const FieldSpec& field);

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p);
std::size_t rank_rational(const SparseMatrix& m);

bool is_prime_u32(std::uint64_t n);
// Distinct certified primes in (2^31, 2^32), determined by the seed.
std::vector<std::uint32_t> draw_primes(std::uint64_t seed, int count);

// Small dense exact helpers for geometry.
int dense_rank(std::vector<std::vector<Rational>> rows);
std::vector<std::vector<Rational>> dense_kernel(std::vector<std::vector<Rational>> rows, std::size_t cols);

}  // namespace splinedim
