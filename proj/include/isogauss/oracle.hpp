#pragma once

#include "isogauss/budget.hpp"
#include "isogauss/cyclotomic.hpp"
#include "isogauss/quadform.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <vector>

namespace isogauss {

/// Brute-force character sums over all symmetric n x n matrices S.
///
/// For each S the oracle tabulates (det S / p), computed by elimination,
/// and the congruence class of S, computed by classify(). Tables are built
/// lazily, once, and are then read-only, so one instance can serve
/// concurrent callers. Memory is about 2 bytes per matrix.
class SymmetricOracle {
public:
    SymmetricOracle(const PrimeContext& ctx, int n, const Budget& budget = {});

    const PrimeContext& context() const { return ctx_; }
    int n() const { return n_; }
    std::uint64_t size() const { return stream_.size(); }

    /// G*_T = sum_S (det S / p) zeta^(2 tr(TS)).
    CycInt twisted(const SymMatrix& t) const;

    /// G*_T(r) = sum over S ~ U_{n,r} minus sum over S ~ Ubar_{n,r}.
    CycInt restricted(const SymMatrix& t, int r) const;
    /// restricted(t, r) for r = 0..n from one pass.
    std::vector<CycInt> restricted_all(const SymMatrix& t) const;

    /// sum over every S of zeta^(2 tr(TS)), assembled from the per-class sums.
    CycInt full_character_sum(const SymMatrix& t) const;

    /// Per-class exponent histograms: counts[code * p + e] with
    /// code = 2 * rank + (nonsquare ? 1 : 0).
    std::vector<std::int64_t> class_histogram(const SymMatrix& t) const;

    /// Number of matrices in each class code.
    std::vector<std::uint64_t> class_sizes() const;

private:
    void ensure_det() const;
    void ensure_class() const;
    std::vector<Elem> exponent_weights(const SymMatrix& t) const;

    PrimeContext ctx_;
    int n_;
    Budget budget_;
    SymmetricStream stream_;

    mutable std::once_flag det_once_;
    mutable std::once_flag class_once_;
    mutable std::vector<std::int8_t> det_chi_;
    mutable std::vector<std::uint8_t> class_code_;
};

CycInt gauss_twisted_bf(const PrimeContext& ctx, const SymMatrix& t, const Budget& budget = {});
CycInt gauss_restricted_bf(const PrimeContext& ctx, const SymMatrix& t, int r, const Budget& budget = {});

/// sum over all n x n U of zeta^(2 tr(tU A U B)).
CycInt gauss_untwisted_bf(const PrimeContext& ctx, const SymMatrix& a, const SymMatrix& b, const Budget& budget = {});

/// #{C in F^(t x s) : tC X C = Y}, restricted to rank C = s if primitive.
/// Column-by-column search; the budget caps candidate checks.
mpz_class rep_count_bf(const PrimeContext& ctx, const SymMatrix& x, const SymMatrix& y, bool primitive,
                       const Budget& budget = {});

/// Number of j-dimensional subspaces on which X vanishes, by enumerating
/// reduced row echelon bases.
mpz_class iso_subspaces_bf(const PrimeContext& ctx, const SymMatrix& x, int j, const Budget& budget = {});

} // namespace isogauss
