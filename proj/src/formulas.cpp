#include "isogauss/formulas.hpp"

#include "isogauss/errors.hpp"

#include <algorithm>
#include <string>

namespace isogauss {

int eps_pow(const PrimeContext& ctx, int k)
{
    return (k % 2 == 0) ? 1 : ctx.epsilon();
}

namespace {

mpz_class q(const PrimeContext& ctx, QKind kind, int t, int s) { return qfunc(ctx, kind, t, s); }

// prod_{i=1}^{k} (p^(2i-1) - 1)
mpz_class odd_power_product(int p, int k)
{
    mpz_class r = 1;
    for (int i = 1; i <= k; ++i)
        r *= ipow(p, 2 * i - 1) - 1;
    return r;
}

void check_class(const FormClass& c)
{
    if (c.n < 0 || c.d < 0 || c.d > c.n)
        throw UsageError("invalid form class " + to_string(c));
}

FormClass nondegenerate(BaseForm form, int d)
{
    return {d, d, form == BaseForm::I ? DiscType::Square : DiscType::NonSquare};
}

// r*(Q, 0_j) for any class, through the subspace count.
mpz_class rep_star_zero(const PrimeContext& ctx, const FormClass& c, int j)
{
    return q(ctx, QKind::Nu, j, 0) * iso_count(ctx, c, j);
}

} // namespace

QuadValue thm11_value(const PrimeContext& ctx, const FormClass& c)
{
    check_class(c);
    const int p = ctx.p();
    const int cc = c.d / 2;
    if (c.n == 0)
        return quad_from(1, 0);
    if (c.n % 2 == 0) {
        const int m = c.n / 2;
        mpz_class v = eps_pow(ctx, m) * ipow(p, m * m) * odd_power_product(p, m - cc);
        if (cc % 2 == 1)
            v = -v;
        return {v, 0};
    }
    const int m = c.n / 2;
    if (c.d % 2 == 0)
        return {0, 0};
    mpz_class v = eps_pow(ctx, m + cc) * ipow(p, m * m + 2 * m - cc) * odd_power_product(p, m - cc);
    if (cc % 2 == 1)
        v = -v;
    if (c.disc == DiscType::NonSquare)
        v = -v;
    return {0, v};
}

QuadValue gauss_zero_even(const PrimeContext& ctx, int m)
{
    if (m < 0)
        throw UsageError("gauss_zero_even: m must be >= 0");
    const mpz_class num = eps_pow(ctx, m) * ipow(ctx.p(), m * m) * q(ctx, QKind::Mu, 2 * m, 2 * m);
    return {exact_div(num, q(ctx, QKind::MuDelta, m, m)), 0};
}

mpz_class prop41_even_display(const PrimeContext& ctx, int n, int d, int t)
{
    if (t < 0 || 2 * t > n || d < 0 || d > n)
        throw UsageError("prop41_even_display: need 0 <= 2t <= n and 0 <= d <= n");
    const int p = ctx.p();
    const int c = d / 2;
    const int s = n - 2 * t;

    auto a_s = [&](int x, int y) {
        const mpz_class px = ipow(p, x);
        const int ex = eps_pow(ctx, x);
        mpz_class v = (px + ex) * rep_star_zero(ctx, {2 * x + s, 2 * x, DiscType::Square}, 2 * y);
        if (x > 0) // the J term carries p^0 - 1 = 0 at x = 0
            v -= (px - ex) * rep_star_zero(ctx, {2 * x + s, 2 * x, DiscType::NonSquare}, 2 * y);
        return v;
    };

    mpz_class sum = 0;
    for (int k = 0; k <= std::min(c, t); ++k) {
        mpz_class term = eps_pow(ctx, k) * ipow(p, s * (2 * k + 1) + 2 * t * k + t - k) *
                         q(ctx, QKind::MuDelta, t, k) * q(ctx, QKind::Gamma, c, k) * a_s(t - k, c - k);
        if (k % 2 == 1)
            term = -term;
        sum += term;
    }
    // The prefactor depends on d only through c = floor(d/2).
    mpq_class v(q(ctx, QKind::Nu, n, 2 * c) * sum, orth_order(ctx, {n + 1, 2 * t + 1, DiscType::Square}));
    v.canonicalize();
    return require_integer(v, "even restricted sum");
}

QuadValue prop41_value(const PrimeContext& ctx, const FormClass& c, int r)
{
    check_class(c);
    if (r < 0 || r > c.n)
        throw UsageError("prop41_value: need 0 <= r <= n");
    if (r == 0)
        return {0, 0};
    if (r % 2 == 0)
        return {prop41_even_display(ctx, c.n, c.d, r / 2), 0};

    const int t = (r - 1) / 2;
    if (c.d % 2 == 0)
        return {0, 0};
    const int cc = c.d / 2;
    const mpz_class inner = prop41_even_display(ctx, c.n - 1, 2 * cc, t);
    mpq_class ratio(q(ctx, QKind::Nu, c.n, 2 * cc + 1), q(ctx, QKind::Nu, c.n - 1, 2 * cc));
    ratio.canonicalize();
    mpz_class v = require_integer(ratio * eps_pow(ctx, cc) * ipow(ctx.p(), cc) * inner, "odd restricted sum");
    if (c.disc == DiscType::NonSquare)
        v = -v;
    return {0, v};
}

const char* untwisted_name(Untwisted which)
{
    switch (which) {
    case Untwisted::G_I:
        return "G_I";
    case Untwisted::G_J:
        return "G_J";
    case Untwisted::Gbar_I:
        return "Gbar_I";
    case Untwisted::Gbar_J:
        return "Gbar_J";
    }
    return "?";
}

QuadValue untwisted_closed(const PrimeContext& ctx, int n, Untwisted which)
{
    if (n < 1)
        throw UsageError("untwisted_closed: n must be >= 1");
    const QuadValue base = quad_pow(quad_from(0, 1), static_cast<unsigned>(n * n), ctx);
    // One factor omega in A or B turns n of the scalar sums into G*_omega = -g;
    // with omega in both, the corner entry carries omega^2, a square.
    const bool one_omega = which == Untwisted::G_J || which == Untwisted::Gbar_I;
    if (one_omega && n % 2 == 1)
        return quad_neg(base);
    return base;
}

std::pair<SymMatrix, SymMatrix> untwisted_matrices(const PrimeContext& ctx, int n, Untwisted which)
{
    const SymMatrix i = canonical_matrix(ctx, {n, n, DiscType::Square});
    const SymMatrix j = canonical_matrix(ctx, {n, n, DiscType::NonSquare});
    switch (which) {
    case Untwisted::G_I:
        return {i, i};
    case Untwisted::G_J:
        return {j, i};
    case Untwisted::Gbar_I:
        return {i, j};
    case Untwisted::Gbar_J:
        return {j, j};
    }
    throw UsageError("unknown untwisted sum");
}

mpz_class cor12_rhs(const PrimeContext& ctx, const SymMatrix& t)
{
    const int n = t.n();
    const FormClass ext = classify(ctx, direct_sum(t, SymMatrix::diagonal(ctx, {1})));
    mpz_class total = 0;
    for (int a = 0; a <= n; ++a) {
        mpz_class term = ipow(ctx.p(), n * (n + 1) / 2 + a * (a - n)) * iso_count(ctx, ext, a);
        if ((n + a) % 2 == 1)
            term = -term;
        total += term;
    }
    return total;
}

CycCheck cor12_check(const PrimeContext& ctx, const SymMatrix& t, const CycInt& gauss)
{
    CycInt lhs = gauss;
    const CycInt g = g_star_one(ctx);
    for (int i = 0; i < t.n(); ++i)
        lhs = lhs * g;
    CycInt rhs = CycInt::constant(ctx.p(), cor12_rhs(ctx, t));
    const bool match = lhs == rhs;
    return {std::move(lhs), std::move(rhs), match};
}

CycCheck cor12_check(const PrimeContext& ctx, const SymMatrix& t, GaussSource source, const Budget& budget)
{
    const CycInt gauss = source == GaussSource::ClosedForm ? embed(thm11_value(ctx, classify(ctx, t)), ctx)
                                                           : gauss_twisted_bf(ctx, t, budget);
    return cor12_check(ctx, t, gauss);
}

const char* lemma52_name(Lemma52Variant v)
{
    switch (v) {
    case Lemma52Variant::Odd:
        return "odd";
    case Lemma52Variant::EvenMatch:
        return "even_match";
    case Lemma52Variant::EvenCross:
        return "even_cross";
    }
    return "?";
}

mpz_class lemma52_sum(const PrimeContext& ctx, int m, Lemma52Variant v)
{
    if (m < 0 || (m == 0 && v != Lemma52Variant::Odd))
        throw UsageError("lemma52: even variants need m >= 1, odd needs m >= 0");
    const int p = ctx.p();
    mpz_class total = 0;
    for (int s = 0; s <= m; ++s) {
        mpz_class term;
        bool negative = s % 2 == 1;
        switch (v) {
        case Lemma52Variant::Odd:
            term = ipow(p, (2 * m + 1) * (m - s) + s * s) * q(ctx, QKind::Beta, m, m - s) *
                   q(ctx, QKind::Delta, m, m - s);
            break;
        case Lemma52Variant::EvenMatch:
            term = ipow(p, 2 * m * (m - s) + s * (s - 1)) * q(ctx, QKind::Beta, m, m - s) *
                   q(ctx, QKind::Delta, m - 1, m - s);
            break;
        case Lemma52Variant::EvenCross:
            if (s == 0)
                continue;
            negative = !negative;
            term = ipow(p, 2 * m * (m - s) + s * (s - 1)) * q(ctx, QKind::Beta, m - 1, m - s) *
                   q(ctx, QKind::Delta, m, m - s);
            break;
        }
        total += negative ? mpz_class(-term) : term;
    }
    return total;
}

FormClass lemma52_form(const PrimeContext& ctx, int m, Lemma52Variant v, bool flipped)
{
    if (v == Lemma52Variant::Odd) {
        const DiscType disc = flipped ? DiscType::NonSquare : DiscType::Square;
        return {2 * m + 1, 2 * m + 1, disc};
    }
    // even_match pairs with I_{2m} when eps^m = 1, even_cross with J_{2m}.
    bool use_i = (eps_pow(ctx, m) == 1) == (v == Lemma52Variant::EvenMatch);
    if (flipped)
        use_i = !use_i;
    return {2 * m, 2 * m, use_i ? DiscType::Square : DiscType::NonSquare};
}

IntCheck lemma52_check(const PrimeContext& ctx, int m, Lemma52Variant v, bool flipped)
{
    mpz_class lhs = lemma52_sum(ctx, m, v);
    const FormClass f = lemma52_form(ctx, m, v, flipped);
    mpz_class rhs = rep_zero_full(ctx, f, f.n);
    const bool match = lhs == rhs;
    return {std::move(lhs), std::move(rhs), match};
}

CycInt lemma53_rhs(const PrimeContext& ctx, BaseForm form, int d, const SymmetricOracle& small, const Budget& budget)
{
    const int ell = small.n();
    if (ell < 1 || ell >= d)
        throw UsageError("lemma53_rhs: need 1 <= ell < d");
    const SymMatrix x = canonical_matrix(ctx, nondegenerate(form, d));
    const auto classes = all_classes(ell);

    std::vector<mpz_class> weights;
    std::vector<mpz_class> orders;
    mpz_class common = 1;
    for (const auto& c : classes) {
        weights.push_back(rep_count_bf(ctx, x, canonical_matrix(ctx, c), true, budget));
        orders.push_back(orth_order(ctx, c));
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), orders.back().get_mpz_t());
    }
    CycInt total = CycInt::zero(ctx.p());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (weights[i] == 0)
            continue;
        const mpz_class scale = weights[i] * (common / orders[i]);
        total += scale * small.twisted(canonical_matrix(ctx, classes[i]));
    }
    return cyc_exact_div(total, common);
}

mpq_class lemma54_h(const PrimeContext& ctx, int ell, int rank_y, DiscType disc)
{
    if (rank_y < 0 || rank_y > ell)
        throw UsageError("lemma54_h: need 0 <= rank <= ell");
    const int k = ell / 2;
    const int b = rank_y / 2;
    mpq_class base(q(ctx, QKind::Mu, 2 * (k - b), 2 * (k - b)), q(ctx, QKind::MuDelta, k - b, k - b));
    base.canonicalize();
    if (b % 2 == 1)
        base = -base;
    if (ell % 2 == 0)
        return base;
    if (rank_y % 2 == 0)
        return 0;
    mpq_class v = base * eps_pow(ctx, b) * qpow(ctx.p(), -b);
    if (disc == DiscType::NonSquare)
        v = -v;
    return v;
}

mpq_class lemma54_sum(const PrimeContext& ctx, int d, BaseForm form, int ell, const Budget& budget)
{
    if (ell < 1 || ell > d)
        throw UsageError("lemma54_sum: need 0 < ell <= d");
    const SymMatrix x = canonical_matrix(ctx, nondegenerate(form, d));
    mpq_class total = 0;
    for (const auto& c : all_classes(ell)) {
        const mpq_class h = lemma54_h(ctx, ell, c.d, c.disc);
        if (h == 0)
            continue;
        mpq_class w(rep_count_bf(ctx, x, canonical_matrix(ctx, c), true, budget), orth_order(ctx, c));
        w.canonicalize();
        total += w * h;
    }
    return total;
}

mpq_class lemma54_target(const PrimeContext& ctx, int d, BaseForm form, int ell)
{
    const int c = d / 2;
    const int k = ell / 2;
    mpq_class g(q(ctx, QKind::Gamma, c, k));
    if (k % 2 == 1)
        g = -g;
    if (ell % 2 == 0)
        return g;
    if (d % 2 == 0)
        return 0;
    mpq_class v = g * eps_pow(ctx, c) * qpow(ctx.p(), c - 2 * k);
    if (form == BaseForm::J)
        v = -v;
    return v;
}

} // namespace isogauss
