#include "isogauss/oracle.hpp"

#include "isogauss/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <string>
#include <thread>

namespace isogauss {

namespace {

using Ranges = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// Runs f(chunk_index, lo, hi) on every range, one thread per range.
template <class F>
void run_chunks(const Ranges& ranges, F&& f)
{
    if (ranges.size() <= 1) {
        for (std::size_t i = 0; i < ranges.size(); ++i)
            f(i, ranges[i].first, ranges[i].second);
        return;
    }
    std::vector<std::exception_ptr> errors(ranges.size());
    {
        std::vector<std::jthread> workers;
        workers.reserve(ranges.size());
        for (std::size_t i = 0; i < ranges.size(); ++i)
            workers.emplace_back([&, i] {
                try {
                    f(i, ranges[i].first, ranges[i].second);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

// Base-p digit counter over the upper triangle of a symmetric matrix,
// tracking sum_k weight[k] * digit[k] mod p.
class Odometer {
public:
    Odometer(int p, std::uint64_t index, std::vector<Elem> weights)
        : p_(p), weights_(std::move(weights)), digits_(weights_.size(), 0)
    {
        for (std::size_t k = digits_.size(); k-- > 0;) {
            digits_[k] = static_cast<Elem>(index % static_cast<std::uint64_t>(p));
            index /= static_cast<std::uint64_t>(p);
        }
        long long e = 0;
        for (std::size_t k = 0; k < digits_.size(); ++k)
            e += static_cast<long long>(weights_[k]) * digits_[k];
        exponent_ = static_cast<Elem>(e % p);
    }

    Elem exponent() const { return exponent_; }
    const std::vector<Elem>& digits() const { return digits_; }

    // Returns the lowest digit position that changed.
    std::size_t advance()
    {
        std::size_t k = digits_.size();
        while (k-- > 0) {
            // A step from d to d+1, or the wrap from p-1 to 0, both change
            // the weighted sum by +weight mod p.
            exponent_ += weights_[k];
            if (exponent_ >= p_)
                exponent_ -= p_;
            if (++digits_[k] < p_)
                return k;
            digits_[k] = 0;
        }
        return 0;
    }

private:
    int p_;
    std::vector<Elem> weights_;
    std::vector<Elem> digits_;
    Elem exponent_ = 0;
};

std::vector<std::pair<int, int>> upper_positions(int n)
{
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            pos.emplace_back(i, j);
    return pos;
}

void check_dim(const SymMatrix& t, int n)
{
    if (t.n() != n)
        throw UsageError("matrix dimension " + std::to_string(t.n()) + " does not match oracle dimension " +
                         std::to_string(n));
}

} // namespace

SymmetricOracle::SymmetricOracle(const PrimeContext& ctx, int n, const Budget& budget)
    : ctx_(ctx), n_(n), budget_(budget), stream_(ctx_, n, budget)
{
    if (n > 8)
        throw UsageError("oracle dimension too large");
}

void SymmetricOracle::ensure_det() const
{
    std::call_once(det_once_, [this] {
        det_chi_.assign(stream_.size(), 0);
        const auto pos = upper_positions(n_);
        const std::vector<Elem> zero_weights(pos.size(), 0);
        run_chunks(stream_.split(budget_.parallel_chunks), [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
            if (lo == hi)
                return;
            Odometer odo(ctx_.p(), lo, zero_weights);
            std::array<Elem, 64> a{};
            for (std::uint64_t i = lo;; ) {
                const auto& dg = odo.digits();
                for (std::size_t k = 0; k < pos.size(); ++k) {
                    const auto [r, c] = pos[k];
                    a[static_cast<std::size_t>(r * n_ + c)] = dg[k];
                    a[static_cast<std::size_t>(c * n_ + r)] = dg[k];
                }
                det_chi_[i] = static_cast<std::int8_t>(ctx_.legendre(detail::determinant_kernel(ctx_, a.data(), n_)));
                if (++i == hi)
                    break;
                odo.advance();
            }
        });
    });
}

void SymmetricOracle::ensure_class() const
{
    std::call_once(class_once_, [this] {
        class_code_.assign(stream_.size(), 0);
        const auto pos = upper_positions(n_);
        const std::vector<Elem> zero_weights(pos.size(), 0);
        run_chunks(stream_.split(budget_.parallel_chunks), [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
            if (lo == hi)
                return;
            Odometer odo(ctx_.p(), lo, zero_weights);
            std::array<Elem, 64> a{};
            for (std::uint64_t i = lo;; ) {
                const auto& dg = odo.digits();
                for (std::size_t k = 0; k < pos.size(); ++k) {
                    const auto [r, c] = pos[k];
                    a[static_cast<std::size_t>(r * n_ + c)] = dg[k];
                    a[static_cast<std::size_t>(c * n_ + r)] = dg[k];
                }
                const auto [rk, square] = detail::classify_kernel(ctx_, a.data(), n_);
                class_code_[i] = static_cast<std::uint8_t>(2 * rk + ((rk > 0 && !square) ? 1 : 0));
                if (++i == hi)
                    break;
                odo.advance();
            }
        });
    });
}

std::vector<Elem> SymmetricOracle::exponent_weights(const SymMatrix& t) const
{
    check_dim(t, n_);
    // zeta^(2 tr(TS)): tr(TS) = sum_i T_ii S_ii + 2 sum_{i<j} T_ij S_ij.
    std::vector<Elem> w;
    for (const auto& [i, j] : upper_positions(n_))
        w.push_back(ctx_.reduce((i == j ? 2LL : 4LL) * t(i, j)));
    return w;
}

CycInt SymmetricOracle::twisted(const SymMatrix& t) const
{
    const auto weights = exponent_weights(t);
    ensure_det();
    const int p = ctx_.p();
    const auto ranges = stream_.split(budget_.parallel_chunks);
    std::vector<std::vector<std::int64_t>> partial(ranges.size(), std::vector<std::int64_t>(static_cast<std::size_t>(p), 0));
    run_chunks(ranges, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
        if (lo == hi)
            return;
        auto& h = partial[c];
        Odometer odo(p, lo, weights);
        for (std::uint64_t i = lo;; ) {
            h[static_cast<std::size_t>(odo.exponent())] += det_chi_[i];
            if (++i == hi)
                break;
            odo.advance();
        }
    });
    std::vector<std::int64_t> total(static_cast<std::size_t>(p), 0);
    for (const auto& h : partial)
        for (std::size_t e = 0; e < h.size(); ++e)
            total[e] += h[e];
    return CycInt::from_exponent_counts(p, std::span<const std::int64_t>(total));
}

std::vector<std::int64_t> SymmetricOracle::class_histogram(const SymMatrix& t) const
{
    const auto weights = exponent_weights(t);
    ensure_class();
    const int p = ctx_.p();
    const std::size_t codes = static_cast<std::size_t>(2 * n_ + 2);
    const std::size_t width = codes * static_cast<std::size_t>(p);
    const auto ranges = stream_.split(budget_.parallel_chunks);
    std::vector<std::vector<std::int64_t>> partial(ranges.size(), std::vector<std::int64_t>(width, 0));
    run_chunks(ranges, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
        if (lo == hi)
            return;
        auto& h = partial[c];
        Odometer odo(p, lo, weights);
        for (std::uint64_t i = lo;; ) {
            h[static_cast<std::size_t>(class_code_[i]) * static_cast<std::size_t>(p) +
              static_cast<std::size_t>(odo.exponent())] += 1;
            if (++i == hi)
                break;
            odo.advance();
        }
    });
    std::vector<std::int64_t> total(width, 0);
    for (const auto& h : partial)
        for (std::size_t e = 0; e < width; ++e)
            total[e] += h[e];
    return total;
}

std::vector<CycInt> SymmetricOracle::restricted_all(const SymMatrix& t) const
{
    const auto hist = class_histogram(t);
    const auto p = static_cast<std::size_t>(ctx_.p());
    std::vector<CycInt> out;
    out.push_back(CycInt::zero(ctx_.p())); // U_{n,0} and Ubar_{n,0} are the same orbit
    for (int r = 1; r <= n_; ++r) {
        std::vector<std::int64_t> h(p, 0);
        const std::size_t sq = static_cast<std::size_t>(2 * r) * p;
        const std::size_t nsq = static_cast<std::size_t>(2 * r + 1) * p;
        for (std::size_t e = 0; e < p; ++e)
            h[e] = hist[sq + e] - hist[nsq + e];
        out.push_back(CycInt::from_exponent_counts(ctx_.p(), std::span<const std::int64_t>(h)));
    }
    return out;
}

CycInt SymmetricOracle::restricted(const SymMatrix& t, int r) const
{
    if (r < 0 || r > n_)
        throw UsageError("restricted sum needs 0 <= r <= n");
    return restricted_all(t)[static_cast<std::size_t>(r)];
}

CycInt SymmetricOracle::full_character_sum(const SymMatrix& t) const
{
    const auto hist = class_histogram(t);
    const auto p = static_cast<std::size_t>(ctx_.p());
    std::vector<std::int64_t> h(p, 0);
    for (std::size_t i = 0; i < hist.size(); ++i)
        h[i % p] += hist[i];
    return CycInt::from_exponent_counts(ctx_.p(), std::span<const std::int64_t>(h));
}

std::vector<std::uint64_t> SymmetricOracle::class_sizes() const
{
    ensure_class();
    std::vector<std::uint64_t> sizes(static_cast<std::size_t>(2 * n_ + 2), 0);
    for (auto c : class_code_)
        ++sizes[c];
    return sizes;
}

CycInt gauss_twisted_bf(const PrimeContext& ctx, const SymMatrix& t, const Budget& budget)
{
    return SymmetricOracle(ctx, t.n(), budget).twisted(t);
}

CycInt gauss_restricted_bf(const PrimeContext& ctx, const SymMatrix& t, int r, const Budget& budget)
{
    return SymmetricOracle(ctx, t.n(), budget).restricted(t, r);
}

CycInt gauss_untwisted_bf(const PrimeContext& ctx, const SymMatrix& a, const SymMatrix& b, const Budget& budget)
{
    const int n = a.n();
    if (b.n() != n)
        throw UsageError("gauss_untwisted_bf: A and B must have the same size");
    const std::uint64_t total = checked_power(static_cast<std::uint64_t>(ctx.p()), static_cast<unsigned>(n * n));
    if (total > budget.max_terms)
        throw BudgetExceeded("p^(n^2) exceeds the budget of " + std::to_string(budget.max_terms));
    const int p = ctx.p();
    const auto ranges = split_range(total, budget.parallel_chunks);
    std::vector<std::vector<std::int64_t>> partial(ranges.size(), std::vector<std::int64_t>(static_cast<std::size_t>(p), 0));
    run_chunks(ranges, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
        Matrix u(n, n);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t x = idx;
            for (int k = n * n - 1; k >= 0; --k) {
                u(k / n, k % n) = static_cast<Elem>(x % static_cast<std::uint64_t>(p));
                x /= static_cast<std::uint64_t>(p);
            }
            // tr(tU A U B) = sum_{i,j,k,l} U_ki A_kl U_lj B_ji
            long long s = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (b(j, i) == 0)
                        continue;
                    long long m = 0;
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l)
                            m += static_cast<long long>(u(k, i)) * a(k, l) % p * u(l, j);
                    s += (m % p) * b(j, i);
                }
            partial[c][static_cast<std::size_t>(2 * (s % p) % p)] += 1;
        }
    });
    std::vector<std::int64_t> h(static_cast<std::size_t>(p), 0);
    for (const auto& part : partial)
        for (std::size_t e = 0; e < h.size(); ++e)
            h[e] += part[e];
    return CycInt::from_exponent_counts(p, std::span<const std::int64_t>(h));
}

namespace {

// Column-by-column search for tC X C = Y.
class RepSearch {
public:
    RepSearch(const PrimeContext& ctx, const SymMatrix& x, const SymMatrix& y, bool primitive, std::uint64_t max_work,
              std::atomic<std::uint64_t>& work)
        : ctx_(ctx), x_(x), y_(y), primitive_(primitive), t_(x.n()), s_(y.n()), max_work_(max_work), work_(work)
    {
        const auto nvec = checked_power(static_cast<std::uint64_t>(ctx.p()), static_cast<unsigned>(t_));
        vectors_.resize(nvec * static_cast<std::uint64_t>(t_));
        buckets_.assign(static_cast<std::size_t>(ctx.p()), {});
        for (std::uint64_t v = 0; v < nvec; ++v) {
            std::uint64_t z = v;
            Elem* vec = &vectors_[v * static_cast<std::uint64_t>(t_)];
            for (int k = t_ - 1; k >= 0; --k) {
                vec[k] = static_cast<Elem>(z % static_cast<std::uint64_t>(ctx.p()));
                z /= static_cast<std::uint64_t>(ctx.p());
            }
            long long q = 0;
            for (int i = 0; i < t_; ++i)
                for (int j = 0; j < t_; ++j)
                    q += static_cast<long long>(vec[i]) * x(i, j) % ctx.p() * vec[j];
            buckets_[static_cast<std::size_t>(q % ctx.p())].push_back(v);
        }
        forms_.assign(static_cast<std::size_t>(s_ * t_), 0);
        basis_.assign(static_cast<std::size_t>(s_ * t_), 0);
        pivots_.assign(static_cast<std::size_t>(s_), 0);
    }

    /// Candidates for the first column, so callers can split the search.
    const std::vector<std::uint64_t>& first_candidates() const { return buckets_[static_cast<std::size_t>(y_(0, 0))]; }

    std::uint64_t count_from(std::size_t lo, std::size_t hi)
    {
        const auto& cand = first_candidates();
        std::uint64_t total = 0;
        charge(hi - lo);
        for (std::size_t k = lo; k < hi; ++k)
            total += extend(0, cand[k]);
        flush();
        return total;
    }

private:
    const Elem* vec(std::uint64_t v) const { return &vectors_[v * static_cast<std::uint64_t>(t_)]; }

    void charge(std::uint64_t n)
    {
        local_ += n;
        if (local_ >= 1u << 16)
            flush();
    }
    void flush()
    {
        const auto after = work_.fetch_add(local_) + local_;
        local_ = 0;
        if (after > max_work_)
            throw BudgetExceeded("representation count exceeds the budget of " + std::to_string(max_work_) +
                                 " candidate checks");
    }

    // Tries v as column `col`; returns the number of completions.
    std::uint64_t extend(int col, std::uint64_t v)
    {
        const Elem* w = vec(v);
        for (int i = 0; i < col; ++i) {
            long long b = 0;
            const Elem* f = &forms_[static_cast<std::size_t>(i * t_)];
            for (int k = 0; k < t_; ++k)
                b += static_cast<long long>(f[k]) * w[k];
            if (b % ctx_.p() != y_(i, col))
                return 0;
        }
        if (primitive_ && !push_independent(col, w))
            return 0;
        if (col + 1 == s_)
            return 1;
        // tc X as a linear form for later columns.
        Elem* f = &forms_[static_cast<std::size_t>(col * t_)];
        for (int k = 0; k < t_; ++k) {
            long long z = 0;
            for (int i = 0; i < t_; ++i)
                z += static_cast<long long>(w[i]) * x_(i, k);
            f[k] = static_cast<Elem>(z % ctx_.p());
        }
        const auto& cand = buckets_[static_cast<std::size_t>(y_(col + 1, col + 1))];
        charge(cand.size());
        std::uint64_t total = 0;
        for (std::uint64_t u : cand)
            total += extend(col + 1, u);
        return total;
    }

    // Reduces w against basis rows 0..col-1; stores it as row col if independent.
    bool push_independent(int col, const Elem* w)
    {
        Elem* row = &basis_[static_cast<std::size_t>(col * t_)];
        std::copy(w, w + t_, row);
        for (int i = 0; i < col; ++i) {
            const Elem* b = &basis_[static_cast<std::size_t>(i * t_)];
            const Elem c = row[pivots_[static_cast<std::size_t>(i)]];
            if (c == 0)
                continue;
            for (int k = 0; k < t_; ++k)
                row[k] = ctx_.sub(row[k], ctx_.mul(c, b[k]));
        }
        int piv = -1;
        for (int k = 0; k < t_; ++k)
            if (row[k] != 0) {
                piv = k;
                break;
            }
        if (piv < 0)
            return false;
        const Elem inv = ctx_.inv(row[piv]);
        for (int k = 0; k < t_; ++k)
            row[k] = ctx_.mul(row[k], inv);
        pivots_[static_cast<std::size_t>(col)] = piv;
        return true;
    }

    const PrimeContext& ctx_;
    const SymMatrix& x_;
    const SymMatrix& y_;
    bool primitive_;
    int t_;
    int s_;
    std::uint64_t max_work_;
    std::atomic<std::uint64_t>& work_;
    std::uint64_t local_ = 0;

    std::vector<Elem> vectors_;
    std::vector<std::vector<std::uint64_t>> buckets_;
    std::vector<Elem> forms_;
    std::vector<Elem> basis_;
    std::vector<int> pivots_;
};

} // namespace

mpz_class rep_count_bf(const PrimeContext& ctx, const SymMatrix& x, const SymMatrix& y, bool primitive,
                       const Budget& budget)
{
    if (y.n() == 0)
        return 1;
    if (checked_power(static_cast<std::uint64_t>(ctx.p()), static_cast<unsigned>(x.n())) > budget.max_terms)
        throw BudgetExceeded("p^t vectors exceed the budget of " + std::to_string(budget.max_terms));
    std::atomic<std::uint64_t> work{0};
    RepSearch probe(ctx, x, y, primitive, budget.max_terms, work);
    const auto ranges = split_range(probe.first_candidates().size(), budget.parallel_chunks);
    std::vector<std::uint64_t> partial(ranges.size(), 0);
    run_chunks(ranges, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
        RepSearch search(ctx, x, y, primitive, budget.max_terms, work);
        partial[c] = search.count_from(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
    });
    mpz_class total = 0;
    for (auto v : partial)
        total += static_cast<unsigned long>(v);
    return total;
}

mpz_class iso_subspaces_bf(const PrimeContext& ctx, const SymMatrix& x, int j, const Budget& budget)
{
    const int n = x.n();
    if (j < 0 || j > n)
        throw UsageError("iso_subspaces_bf: need 0 <= j <= n");
    if (j == 0)
        return 1;
    const int p = ctx.p();

    std::vector<int> pivots(static_cast<std::size_t>(j));
    for (int r = 0; r < j; ++r)
        pivots[static_cast<std::size_t>(r)] = r;

    std::uint64_t visited = 0;
    std::uint64_t count = 0;
    Matrix basis(j, n);
    std::vector<long long> xb(static_cast<std::size_t>(j * n));
    while (true) {
        std::vector<std::pair<int, int>> free;
        for (int r = 0; r < j; ++r)
            for (int c = pivots[static_cast<std::size_t>(r)] + 1; c < n; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    free.emplace_back(r, c);
        const std::uint64_t cells = checked_power(static_cast<std::uint64_t>(p), static_cast<unsigned>(free.size()));
        visited += cells;
        if (visited > budget.max_terms)
            throw BudgetExceeded("subspace enumeration exceeds the budget of " + std::to_string(budget.max_terms));
        for (std::uint64_t idx = 0; idx < cells; ++idx) {
            basis = Matrix(j, n);
            for (int r = 0; r < j; ++r)
                basis(r, pivots[static_cast<std::size_t>(r)]) = 1;
            std::uint64_t z = idx;
            for (const auto& [r, c] : free) {
                basis(r, c) = static_cast<Elem>(z % static_cast<std::uint64_t>(p));
                z /= static_cast<std::uint64_t>(p);
            }
            bool isotropic = true;
            for (int a = 0; a < j && isotropic; ++a)
                for (int b = a; b < j && isotropic; ++b) {
                    long long g = 0;
                    for (int u = 0; u < n; ++u) {
                        if (basis(a, u) == 0)
                            continue;
                        for (int v = 0; v < n; ++v)
                            g += static_cast<long long>(basis(a, u)) * x(u, v) % p * basis(b, v);
                    }
                    isotropic = g % p == 0;
                }
            if (isotropic)
                ++count;
        }
        // next pivot combination
        int r = j - 1;
        while (r >= 0 && pivots[static_cast<std::size_t>(r)] == n - j + r)
            --r;
        if (r < 0)
            break;
        ++pivots[static_cast<std::size_t>(r)];
        for (int k = r + 1; k < j; ++k)
            pivots[static_cast<std::size_t>(k)] = pivots[static_cast<std::size_t>(k - 1)] + 1;
    }
    return mpz_class(static_cast<unsigned long>(count));
}

} // namespace isogauss
