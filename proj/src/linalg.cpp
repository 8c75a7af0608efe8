#include "splinedim/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <type_traits>
#include <random>
#include <utility>

namespace splinedim {

void SparseMatrix::add(std::size_t row, std::size_t col, Integer value) {
    if (row >= rows || col >= cols) throw Error("sparse matrix entry out of range");
    if (value == 0) return;
    entries.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), std::move(value)});
}

void SparseMatrix::canonicalize() {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Entry> merged;
    merged.reserve(entries.size());
    for (auto& e : entries) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
            merged.back().value += e.value;
        else
            merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Entry& e) { return e.value == 0; }),
                 merged.end());
    entries = std::move(merged);
}

namespace {

// ---------------------------------------------------------------- mod p

std::uint32_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return pow_mod(a, p - 2, p); }

// Precomputed multiplier for x -> w*x mod p with x, w < p < 2^32.
struct Shoup {
    std::uint64_t w, wp, p;
    Shoup(std::uint32_t w_, std::uint32_t p_) : w(w_), wp((std::uint64_t(w_) << 32) / p_), p(p_) {}
    std::uint32_t mul(std::uint32_t x) const {
        std::uint64_t q = (std::uint64_t(x) * wp) >> 32;
        std::uint64_t r = std::uint64_t(x) * w - q * p;
        return static_cast<std::uint32_t>(r >= p ? r - p : r);
    }
};

struct ModpOps {
    using Value = std::uint32_t;
    std::uint32_t p;

    struct Coeffs {
        Shoup beta;  // R[c] after the pivot row has been scaled to 1
    };

    void normalize(std::vector<Value>& vals, std::size_t pivot_pos) const {
        std::uint32_t inv = inv_mod(vals[pivot_pos], p);
        Shoup s(inv, p);
        for (auto& v : vals) v = s.mul(v);
    }
    Coeffs prepare(const Value& /*pivot*/, const Value& rc) const { return {Shoup(rc, p)}; }
    // alpha*r - beta*pv with alpha = 1
    Value both(const Coeffs& k, const Value& r, const Value& pv) const {
        std::uint32_t t = k.beta.mul(pv);
        return r >= t ? r - t : r + (p - t);
    }
    Value only_r(const Coeffs&, const Value& r) const { return r; }
    Value only_p(const Coeffs& k, const Value& pv) const {
        std::uint32_t t = k.beta.mul(pv);
        return t == 0 ? 0 : p - t;
    }
    static bool is_zero(const Value& v) { return v == 0; }
    void finish(std::vector<Value>&) const {}
    static std::size_t weight(const Value&) { return 1; }
};

struct IntegerOps {
    using Value = Integer;

    struct Coeffs {
        Integer alpha, beta;
    };

    void normalize(std::vector<Value>&, std::size_t) const {}
    Coeffs prepare(const Value& pivot, const Value& rc) const {
        Integer g;
        mpz_gcd(g.get_mpz_t(), pivot.get_mpz_t(), rc.get_mpz_t());
        return {pivot / g, rc / g};
    }
    Value both(const Coeffs& k, const Value& r, const Value& pv) const { return k.alpha * r - k.beta * pv; }
    Value only_r(const Coeffs& k, const Value& r) const { return k.alpha * r; }
    Value only_p(const Coeffs& k, const Value& pv) const { return -(k.beta * pv); }
    static bool is_zero(const Value& v) { return v == 0; }
    void finish(std::vector<Value>& vals) const {
        if (vals.empty()) return;
        Integer g = 0;
        for (const auto& v : vals) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
        for (auto& v : vals) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    static std::size_t weight(const Value& v) { return mpz_size(v.get_mpz_t()) + 1; }
};

std::size_t dense_rank_modp(std::vector<std::uint32_t>& a, std::size_t nr, std::size_t nc, std::uint32_t p) {
    std::vector<std::uint32_t*> row(nr);
    for (std::size_t i = 0; i < nr; ++i) row[i] = a.data() + i * nc;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < nc && rank < nr; ++k) {
        std::size_t piv = rank;
        while (piv < nr && row[piv][k] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(row[piv], row[rank]);
        std::uint32_t* pr = row[rank];
        Shoup inv(inv_mod(pr[k], p), p);
        for (std::size_t j = k; j < nc; ++j) pr[j] = inv.mul(pr[j]);
        const std::uint64_t pp = p;
        for (std::size_t i = rank + 1; i < nr; ++i) {
            std::uint32_t* ri = row[i];
            std::uint32_t f = ri[k];
            if (f == 0) continue;
            const std::uint64_t w = f, wp = (w << 32) / pp;
            ri[k] = 0;
            for (std::size_t j = k + 1; j < nc; ++j) {
                std::uint64_t x = pr[j];
                std::uint64_t q = (x * wp) >> 32;
                std::uint64_t t = x * w - q * pp;
                t = t >= pp ? t - pp : t;
                std::uint64_t y = ri[j];
                ri[j] = static_cast<std::uint32_t>(y >= t ? y - t : y + pp - t);
            }
        }
        ++rank;
    }
    return rank;
}

template <class Ops>
class Markowitz {
public:
    using V = typename Ops::Value;
    struct Row {
        std::vector<std::uint32_t> cols;
        std::vector<V> vals;
    };

    Markowitz(Ops ops, std::size_t ncols, std::vector<Row> rows)
        : ops_(std::move(ops)), rows_(std::move(rows)), ncols_(ncols) {}

    // dense(cols of active rows, values) is called once the active part is dense enough;
    // it returns the rank of that remainder.
    template <class DenseFn>
    std::size_t run(double dense_ratio, std::size_t dense_max_entries, DenseFn dense) {
        const std::size_t nr = rows_.size();
        active_.assign(nr, 1);
        stamp_.assign(nr, 0);
        count_.assign(ncols_, 0);
        col_rows_.assign(ncols_, {});
        touched_stamp_.assign(ncols_, 0);
        std::size_t active_rows = 0;
        for (std::uint32_t i = 0; i < nr; ++i) {
            if (rows_[i].cols.empty()) {
                active_[i] = 0;
                continue;
            }
            ++active_rows;
            nnz_ += rows_[i].cols.size();
            for (auto c : rows_[i].cols) {
                ++count_[c];
                col_rows_[c].push_back(i);
            }
        }
        for (std::uint32_t c = 0; c < ncols_; ++c)
            if (count_[c]) {
                heap_.push({count_[c], c});
                ++active_cols_;
            }

        std::size_t rank = 0;
        std::uint32_t step = 0;
        std::vector<std::uint32_t> cand;
        std::vector<std::uint32_t> touched;
        while (!heap_.empty()) {
            auto [cnt, c] = heap_.top();
            heap_.pop();
            if (cnt != count_[c] || cnt == 0) continue;

            if (dense_ratio > 0 && active_rows * active_cols_ <= dense_max_entries &&
                double(nnz_) >= dense_ratio * double(active_rows) * double(active_cols_))
                return rank + dense_remainder(dense);

            ++step;
            cand.clear();
            std::uint32_t best = UINT32_MAX;
            std::size_t best_cost = SIZE_MAX;
            auto& lst = col_rows_[c];
            std::size_t keep = 0;
            for (auto r : lst) {
                if (!active_[r] || stamp_[r] == step) continue;
                if (!contains(rows_[r], c)) continue;
                stamp_[r] = step;
                lst[keep++] = r;
                cand.push_back(r);
                std::size_t cost = row_weight(rows_[r]);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = r;
                }
            }
            lst.resize(keep);

            Row& P = rows_[best];
            std::size_t ppos = position(P, c);
            ops_.normalize(P.vals, ppos);
            ++step;
            touched.clear();
            for (auto r : cand) {
                if (r == best) continue;
                eliminate(rows_[r], r, P, c, ppos, step, touched);
                if (rows_[r].cols.empty()) {
                    active_[r] = 0;
                    --active_rows;
                }
            }
            active_[best] = 0;
            --active_rows;
            nnz_ -= P.cols.size();
            for (auto j : P.cols) {
                if (--count_[j] == 0) --active_cols_;
                if (touched_stamp_[j] != step) {
                    touched_stamp_[j] = step;
                    touched.push_back(j);
                }
            }
            for (auto j : touched)
                if (count_[j]) heap_.push({count_[j], j});
            Row().cols.swap(P.cols);
            std::vector<V>().swap(P.vals);
            ++rank;
        }
        return rank;
    }

private:
    static bool contains(const Row& r, std::uint32_t c) { return std::binary_search(r.cols.begin(), r.cols.end(), c); }
    static std::size_t position(const Row& r, std::uint32_t c) {
        return std::lower_bound(r.cols.begin(), r.cols.end(), c) - r.cols.begin();
    }
    std::size_t row_weight(const Row& r) const {
        std::size_t w = 0;
        if constexpr (std::is_same_v<V, std::uint32_t>)
            w = r.cols.size();
        else
            for (const auto& v : r.vals) w += Ops::weight(v);
        return w;
    }

    void eliminate(Row& R, std::uint32_t rid, const Row& P, std::uint32_t c, std::size_t ppos, std::uint32_t step,
                   std::vector<std::uint32_t>& touched) {
        std::size_t rpos = position(R, c);
        auto k = ops_.prepare(P.vals[ppos], R.vals[rpos]);
        out_cols_.clear();
        out_vals_.clear();
        std::size_t i = 0, j = 0;
        const std::size_t nr = R.cols.size(), np = P.cols.size();
        auto touch = [&](std::uint32_t col) {
            if (touched_stamp_[col] != step) {
                touched_stamp_[col] = step;
                touched.push_back(col);
            }
        };
        while (i < nr || j < np) {
            if (j == np || (i < nr && R.cols[i] < P.cols[j])) {
                out_cols_.push_back(R.cols[i]);
                out_vals_.push_back(ops_.only_r(k, R.vals[i]));
                ++i;
            } else if (i == nr || P.cols[j] < R.cols[i]) {
                std::uint32_t col = P.cols[j];
                V v = ops_.only_p(k, P.vals[j]);
                if (!Ops::is_zero(v)) {
                    out_cols_.push_back(col);
                    out_vals_.push_back(std::move(v));
                    if (count_[col]++ == 0) ++active_cols_;
                    col_rows_[col].push_back(rid);
                    touch(col);
                }
                ++j;
            } else {
                std::uint32_t col = R.cols[i];
                V v = ops_.both(k, R.vals[i], P.vals[j]);
                if (Ops::is_zero(v)) {
                    if (--count_[col] == 0) --active_cols_;
                    touch(col);
                } else {
                    out_cols_.push_back(col);
                    out_vals_.push_back(std::move(v));
                }
                ++i;
                ++j;
            }
        }
        nnz_ += out_cols_.size();
        nnz_ -= nr;
        ops_.finish(out_vals_);
        R.cols.swap(out_cols_);
        R.vals.swap(out_vals_);
    }

    template <class DenseFn>
    std::size_t dense_remainder(DenseFn& dense) {
        std::vector<std::uint32_t> colmap(ncols_, UINT32_MAX);
        std::uint32_t nc = 0;
        for (std::uint32_t c = 0; c < ncols_; ++c)
            if (count_[c]) colmap[c] = nc++;
        std::vector<const Row*> live;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (active_[r]) live.push_back(&rows_[r]);
        return dense(live, colmap, nc);
    }

    Ops ops_;
    std::vector<Row> rows_;
    std::size_t ncols_;
    std::vector<char> active_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> count_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<std::uint32_t> touched_stamp_;
    std::priority_queue<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::pair<std::uint32_t, std::uint32_t>>,
                        std::greater<>>
        heap_;
    std::size_t nnz_ = 0;
    std::size_t active_cols_ = 0;
    std::vector<std::uint32_t> out_cols_;
    std::vector<V> out_vals_;
};

bool is_canonical(const SparseMatrix& m) {
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
        const auto& e = m.entries[i];
        if (e.value == 0) return false;
        if (i && (m.entries[i - 1].row > e.row || (m.entries[i - 1].row == e.row && m.entries[i - 1].col >= e.col)))
            return false;
    }
    return true;
}

const SparseMatrix& canonical(const SparseMatrix& m, SparseMatrix& scratch) {
    if (is_canonical(m)) return m;
    scratch = m;
    scratch.canonicalize();
    return scratch;
}

}  // namespace

std::size_t rank_mod_p(const SparseMatrix& input, std::uint32_t p) {
    SparseMatrix scratch;
    const SparseMatrix& m = canonical(input, scratch);
    using M = Markowitz<ModpOps>;
    std::vector<M::Row> rows(m.rows);
    for (const auto& e : m.entries) {
        std::uint32_t v = static_cast<std::uint32_t>(mpz_fdiv_ui(e.value.get_mpz_t(), p));
        if (v == 0) continue;
        rows[e.row].cols.push_back(e.col);
        rows[e.row].vals.push_back(v);
    }
    M elim(ModpOps{p}, m.cols, std::move(rows));
    auto dense = [p](const std::vector<const M::Row*>& live, const std::vector<std::uint32_t>& colmap,
                     std::uint32_t nc) {
        std::vector<std::uint32_t> a(live.size() * std::size_t(nc), 0);
        for (std::size_t i = 0; i < live.size(); ++i)
            for (std::size_t k = 0; k < live[i]->cols.size(); ++k)
                a[i * nc + colmap[live[i]->cols[k]]] = live[i]->vals[k];
        return dense_rank_modp(a, live.size(), nc, p);
    };
    return elim.run(0.2, std::size_t(400) << 20, dense);
}

std::size_t rank_rational(const SparseMatrix& input) {
    SparseMatrix scratch;
    const SparseMatrix& m = canonical(input, scratch);
    using M = Markowitz<IntegerOps>;
    std::vector<M::Row> rows(m.rows);
    for (const auto& e : m.entries) {
        rows[e.row].cols.push_back(e.col);
        rows[e.row].vals.push_back(e.value);
    }
    IntegerOps ops;
    for (auto& r : rows) ops.finish(r.vals);
    M elim(ops, m.cols, std::move(rows));
    auto no_dense = [](const std::vector<const M::Row*>&, const std::vector<std::uint32_t>&, std::uint32_t) {
        return std::size_t(0);
    };
    return elim.run(0.0, 0, no_dense);
}

bool is_prime_u32(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 61u})
        if (n % small == 0) return n == small;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Bases 2, 7, 61 are deterministic below 4759123141 > 2^32.
    for (std::uint64_t a : {2u, 7u, 61u}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint32_t> draw_primes(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
    std::vector<std::uint32_t> out;
    while (static_cast<int>(out.size()) < count) {
        std::uint64_t candidate = (std::uint64_t(1) << 31) + (rng() >> 33);
        candidate |= 1;
        if (!is_prime_u32(candidate)) continue;
        if (std::find(out.begin(), out.end(), candidate) != out.end()) continue;
        out.push_back(static_cast<std::uint32_t>(candidate));
    }
    return out;
}

RankReport rank_report(const SparseMatrix& m, const FieldSpec& field) {
    RankReport rep;
    if (field.kind == FieldKind::exact_rational) {
        rep.rank = rank_rational(m);
        return rep;
    }
    int count = std::max(1, field.retries);
    std::vector<std::uint32_t> primes;
    if (field.prime) {
        if (field.prime <= (std::uint64_t(1) << 30) || field.prime >= (std::uint64_t(1) << 32) ||
            !is_prime_u32(field.prime))
            throw Error("field prime must be a prime in (2^30, 2^32)");
        primes.push_back(static_cast<std::uint32_t>(field.prime));
        for (auto q : draw_primes(field.seed, count))
            if (static_cast<int>(primes.size()) < count && q != field.prime) primes.push_back(q);
    } else {
        primes = draw_primes(field.seed, count);
    }
    for (auto p : primes) {
        rep.primes.push_back(p);
        rep.prime_ranks.push_back(rank_mod_p(m, p));
    }
    rep.rank = *std::max_element(rep.prime_ranks.begin(), rep.prime_ranks.end());
    rep.disagreement =
        std::any_of(rep.prime_ranks.begin(), rep.prime_ranks.end(), [&](std::size_t r) { return r != rep.rank; });
    if (rep.disagreement && field.escalate) {
        if (m.cols > field.exact_column_limit)
            throw FieldFailure("modular ranks disagree and the matrix exceeds the exact-arithmetic limit");
        rep.rank = rank_rational(m);
        rep.escalated = true;
    }
    return rep;
}

std::size_t rank(const SparseMatrix& m, const FieldSpec& field) { return rank_report(m, field).rank; }

std::size_t kernel_dim(const SparseMatrix& m, const FieldSpec& field) { return m.cols - rank(m, field); }

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int dense_rank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    return static_cast<int>(rref(rows, cols).size());
}

std::vector<std::vector<Rational>> dense_kernel(std::vector<std::vector<Rational>> rows, std::size_t cols) {
    auto pivots = rref(rows, cols);
    std::vector<char> is_pivot(cols, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace splinedim
