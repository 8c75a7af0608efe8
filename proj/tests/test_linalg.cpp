#include "splinedim/linalg.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace splinedim;

namespace {

// Plain fraction Gaussian elimination, kept deliberately naive.
std::size_t naive_rank(std::vector<std::vector<Rational>> a) {
    std::size_t rank = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

SparseMatrix to_sparse(const std::vector<std::vector<long>>& a, std::size_t cols) {
    SparseMatrix m(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (a[i][j]) m.add(i, j, a[i][j]);
    m.canonicalize();
    return m;
}

std::vector<std::vector<Rational>> to_dense(const std::vector<std::vector<long>>& a) {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : a) {
        std::vector<Rational> r;
        for (long x : row) r.emplace_back(x);
        out.push_back(r);
    }
    return out;
}

// Product of random n x k and k x n integer matrices: rank <= k, sparse-ish.
std::vector<std::vector<long>> low_rank(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    std::uniform_int_distribution<long> dist(-3, 3);
    std::vector<std::vector<long>> u(n, std::vector<long>(k)), v(k, std::vector<long>(n)), out(n, std::vector<long>(n));
    for (auto& row : u)
        for (auto& x : row) x = dist(rng);
    for (auto& row : v)
        for (auto& x : row) x = dist(rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t t = 0; t < k; ++t) out[i][j] += u[i][t] * v[t][j];
    return out;
}

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("canonicalize merges duplicates and drops zeros") {
    SparseMatrix m(2, 2);
    m.add(1, 1, 3);
    m.add(0, 0, 2);
    m.add(1, 1, -3);
    m.add(0, 0, 5);
    m.add(0, 1, 0);
    m.canonicalize();
    REQUIRE(m.entries.size() == 1);
    CHECK(m.entries[0].row == 0);
    CHECK(m.entries[0].col == 0);
    CHECK(m.entries[0].value == 7);
}

TEST_CASE("zero and identity matrices") {
    SparseMatrix zero(5, 7);
    for (auto f : {FieldSpec::rational(), FieldSpec::prime_field(1)}) {
        CHECK(rank(zero, f) == 0);
        CHECK(kernel_dim(zero, f) == 7);
    }
    for (std::size_t k : {1, 4, 30}) {
        SparseMatrix id(k, k);
        for (std::size_t i = 0; i < k; ++i) id.add(i, i, 1);
        id.canonicalize();
        CHECK(rank(id, FieldSpec::rational()) == k);
        CHECK(rank(id, FieldSpec::prime_field(3)) == k);
        CHECK(kernel_dim(id, FieldSpec{}) == 0);
    }
}

TEST_CASE("random 20x20 matrices: exact, modular and naive ranks agree") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t k = 1 + trial % 20;
        auto a = low_rank(rng, 20, k);
        std::size_t want = naive_rank(to_dense(a));
        SparseMatrix m = to_sparse(a, 20);
        CHECK(rank_rational(m) == want);
        for (auto p : draw_primes(static_cast<std::uint64_t>(trial), 2)) CHECK(rank_mod_p(m, p) == want);
        CHECK(rank(m, FieldSpec{}) == want);
    }
}

TEST_CASE("rectangular and dense matrices go through the dense fallback") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{30, 12}, {12, 30}, {40, 40}}) {
        std::vector<std::vector<long>> a(rows, std::vector<long>(cols));
        for (auto& row : a)
            for (auto& x : row) x = dist(rng);
        // Duplicate a few rows so the rank is not simply min(rows, cols).
        for (std::size_t i = 0; i + 3 < rows; i += 4) a[i + 1] = a[i];
        std::size_t want = naive_rank(to_dense(a));
        SparseMatrix m = to_sparse(a, cols);
        CHECK(rank_rational(m) == want);
        CHECK(rank(m, FieldSpec{}) == want);
    }
}

TEST_CASE("modular rank never exceeds the rational rank") {
    // Determinant p: full rank over the rationals, singular modulo p.
    const std::uint32_t p = draw_primes(99, 1)[0];
    SparseMatrix m(2, 2);
    m.add(0, 0, Integer(p));
    m.add(1, 1, 1);
    m.canonicalize();
    CHECK(rank_rational(m) == 2);
    CHECK(rank_mod_p(m, p) == 1);
    CHECK(rank_mod_p(m, draw_primes(100, 1)[0]) == 2);
}

TEST_CASE("disagreeing primes escalate to exact arithmetic") {
    const std::uint32_t p = draw_primes(5, 1)[0];
    SparseMatrix m(1, 1);
    m.add(0, 0, Integer(p));
    m.canonicalize();
    FieldSpec f = FieldSpec::prime_field(11);
    f.prime = p;
    RankReport rep = rank_report(m, f);
    CHECK(rep.disagreement);
    CHECK(rep.escalated);
    CHECK(rep.rank == 1);
    CHECK(rep.primes.size() == 2);

    f.exact_column_limit = 0;
    CHECK_THROWS_AS(rank(m, f), FieldFailure);

    f.escalate = false;
    CHECK(rank_report(m, f).rank == 1);  // maximum over the primes
}

TEST_CASE("field prime must be large and prime") {
    SparseMatrix m(1, 1);
    FieldSpec f = FieldSpec::prime_field(1);
    f.prime = 101;
    CHECK_THROWS_AS(rank(m, f), Error);
    f.prime = (std::uint64_t(1) << 31) + 2;
    CHECK_THROWS_AS(rank(m, f), Error);
}

TEST_CASE("rank is invariant under permutations and row scaling") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = low_rank(rng, 18, 7 + trial % 5);
        SparseMatrix m = to_sparse(a, 18);
        const std::size_t base = rank(m, FieldSpec{});
        std::vector<std::uint32_t> rp(18), cp(18);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        SparseMatrix t(18, 18);
        for (const auto& e : m.entries) t.add(rp[e.row], cp[e.col], e.value * Integer(static_cast<long>(e.row % 5) + 2));
        t.canonicalize();
        CHECK(rank(t, FieldSpec{}) == base);
        CHECK(rank(t, FieldSpec::rational()) == base);
    }
}

TEST_CASE("prime draws are certified, distinct and deterministic") {
    auto a = draw_primes(17, 4), b = draw_primes(17, 4);
    CHECK(a == b);
    for (auto p : a) {
        CHECK(p > (std::uint64_t(1) << 31));
        CHECK(is_prime_u32(p));
    }
    std::sort(a.begin(), a.end());
    CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
    CHECK(draw_primes(18, 2) != draw_primes(17, 2));
}

TEST_CASE("Miller-Rabin agrees with trial division") {
    std::mt19937_64 rng(3);
    for (std::uint64_t n = 0; n < 3000; ++n) CHECK(is_prime_u32(n) == trial_division_prime(n));
    for (int i = 0; i < 300; ++i) {
        std::uint64_t n = (std::uint64_t(1) << 31) + (rng() >> 33);
        CHECK(is_prime_u32(n) == trial_division_prime(n));
    }
    // Strong pseudoprimes to some of the bases.
    for (std::uint64_t n : {2047ULL, 1373653ULL, 25326001ULL, 3215031751ULL})
        CHECK(is_prime_u32(n) == trial_division_prime(n));
}

TEST_CASE("modular rank is deterministic for a fixed seed") {
    std::mt19937_64 rng(5);
    auto a = low_rank(rng, 20, 9);
    SparseMatrix m = to_sparse(a, 20);
    auto r1 = rank_report(m, FieldSpec::prime_field(77));
    auto r2 = rank_report(m, FieldSpec::prime_field(77));
    CHECK(r1.primes == r2.primes);
    CHECK(r1.prime_ranks == r2.prime_ranks);
}

TEST_CASE("dense helpers") {
    std::vector<std::vector<Rational>> rows{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK(dense_rank(rows) == 2);
    auto ker = dense_kernel(rows, 3);
    REQUIRE(ker.size() == 1);
    for (const auto& row : rows) {
        Rational s = 0;
        for (int j = 0; j < 3; ++j) s += row[j] * ker[0][j];
        CHECK(s == 0);
    }
}
