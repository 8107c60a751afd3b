#include "isogauss/counts.hpp"

#include "isogauss/errors.hpp"

#include <algorithm>
#include <string>

namespace isogauss {

mpz_class ipow(int p, int e)
{
    if (e < 0)
        throw UsageError("ipow: negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

mpq_class qpow(int p, int e)
{
    if (e >= 0)
        return mpq_class(ipow(p, e));
    mpq_class q(mpz_class(1), ipow(p, -e));
    q.canonicalize();
    return q;
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b)
{
    if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw InternalError("non-exact division " + a.get_str() + " / " + b.get_str());
    return a / b;
}

mpz_class require_integer(mpq_class q, const char* what)
{
    q.canonicalize();
    if (q.get_den() != 1)
        throw InternalError(std::string(what) + " is not an integer: " + q.get_str());
    return q.get_num();
}

namespace {

void check_args(int t, int s, const char* name)
{
    if (t < 0 || s < 0)
        throw UsageError(std::string(name) + ": negative argument");
}

mpz_class mu(int p, int t, int s)
{
    check_args(t, s, "mu");
    if (s > t)
        return 0; // factor p^0 - 1
    mpz_class r = 1;
    for (int i = 0; i < s; ++i)
        r *= ipow(p, t - i) - 1;
    return r;
}

mpz_class delta(int p, int t, int s)
{
    check_args(t, s, "delta");
    if (s > t + 1)
        throw UsageError("delta(t,s) with s > t+1 is not an integer");
    mpz_class r = 1;
    for (int i = 0; i < s; ++i)
        r *= ipow(p, t - i) + 1;
    return r;
}

mpz_class nu(int p, int t, int s)
{
    check_args(t, s, "nu");
    mpz_class r = 1;
    const mpz_class pt = ipow(p, t);
    for (int i = s; i < t; ++i)
        r *= pt - ipow(p, i);
    return r;
}

} // namespace

mpz_class qfunc(const PrimeContext& ctx, QKind kind, int t, int s)
{
    const int p = ctx.p();
    if (kind == QKind::Beta && s < 0)
        return 0;
    if (s == 0 && kind != QKind::Nu)
        return 1;
    switch (kind) {
    case QKind::Mu:
        return mu(p, t, s);
    case QKind::Delta:
        return delta(p, t, s);
    case QKind::MuDelta:
        return s > t ? mpz_class(0) : mu(p, t, s) * delta(p, t, s);
    case QKind::Beta: {
        check_args(t, s, "beta");
        mpq_class q(mu(p, t, s), mu(p, s, s));
        q.canonicalize();
        return require_integer(q, "beta");
    }
    case QKind::Nu:
        return nu(p, t, s);
    case QKind::Gamma: {
        check_args(t, s, "gamma");
        if (s > t)
            return 0;
        mpq_class q(mu(p, t, s) * delta(p, t, s), mu(p, s, s) * delta(p, s, s));
        q.canonicalize();
        return require_integer(q, "gamma");
    }
    }
    throw UsageError("unknown q-function kind");
}

mpz_class rep_star_lemma51(const PrimeContext& ctx, BaseForm form, int size, RepTarget target)
{
    if (size < 1)
        throw UsageError("rep_star_lemma51: size must be >= 1");
    const int p = ctx.p();
    const int t = size / 2;
    const int eps_t = (t % 2 == 0) ? 1 : ctx.epsilon();
    const bool is_i = form == BaseForm::I;

    if (target.kind == RepTarget::Kind::Zeros) {
        const int d = target.d;
        if (d < 1)
            throw UsageError("rep_star_lemma51: zeros(d) needs d >= 1");
        if (d > t)
            return 0;
        const mpz_class lead = ipow(p, d * (d - 1) / 2);
        if (size % 2 == 1)
            return lead * qfunc(ctx, QKind::MuDelta, t, d);
        const mpz_class pt = ipow(p, t);
        const mpz_class ptd = ipow(p, t - d);
        const mpz_class md = qfunc(ctx, QKind::MuDelta, t - 1, d - 1);
        if (is_i)
            return lead * (pt - eps_t) * md * (ptd + eps_t);
        return lead * (pt + eps_t) * md * (ptd - eps_t);
    }

    const bool one = target.kind == RepTarget::Kind::One;
    const mpz_class pt = ipow(p, t);
    if (size % 2 == 0) {
        if (t < 1)
            throw UsageError("rep_star_lemma51: unsupported size");
        // Independent of the target's square class.
        return ipow(p, t - 1) * (is_i ? mpz_class(pt - eps_t) : mpz_class(pt + eps_t));
    }
    // r*(I,1) = r*(J,omega) and r*(I,omega) = r*(J,1).
    const bool plus = (is_i == one);
    return pt * (plus ? mpz_class(pt + eps_t) : mpz_class(pt - eps_t));
}

namespace {

mpz_class orth_nondegenerate(const PrimeContext& ctx, int d, DiscType disc)
{
    if (d == 0)
        return 1;
    const int p = ctx.p();
    const int m = d / 2;
    if (d % 2 == 1)
        return 2 * ipow(p, m * m) * qfunc(ctx, QKind::MuDelta, m, m);
    // I_{2m} is hyperbolic iff eps^m = 1; J_{2m} is the other type.
    const int eps_m = (m % 2 == 0) ? 1 : ctx.epsilon();
    const bool hyperbolic = (disc == DiscType::Square) == (eps_m == 1);
    const int eta = hyperbolic ? 1 : -1;
    return 2 * ipow(p, m * (m - 1)) * (ipow(p, m) - eta) * qfunc(ctx, QKind::MuDelta, m - 1, m - 1);
}

// R*(Q, 0_j) for the nondegenerate rank-d form Q of the given type.
mpz_class iso_nondegenerate(const PrimeContext& ctx, int d, DiscType disc, int j)
{
    if (j == 0)
        return 1;
    if (d == 0)
        return 0;
    const BaseForm form = disc == DiscType::Square ? BaseForm::I : BaseForm::J;
    const mpz_class r = rep_star_lemma51(ctx, form, d, RepTarget::zeros(j));
    return exact_div(r, qfunc(ctx, QKind::Nu, j, 0));
}

void check_class(const FormClass& c)
{
    if (c.n < 0 || c.d < 0 || c.d > c.n)
        throw UsageError("invalid form class " + to_string(c));
}

} // namespace

mpz_class orth_order(const PrimeContext& ctx, const FormClass& c)
{
    check_class(c);
    const int s = c.n - c.d;
    return orth_nondegenerate(ctx, c.d, c.disc) * ipow(ctx.p(), c.d * s) * qfunc(ctx, QKind::Nu, s, 0);
}

mpz_class iso_count(const PrimeContext& ctx, const FormClass& c, int j)
{
    check_class(c);
    if (j < 0 || j > c.n)
        throw UsageError("iso_count: need 0 <= j <= n");
    const int s = c.n - c.d;
    // W meets the radical in an i-space; its image in the nondegenerate
    // quotient is a totally isotropic (j-i)-space with p^((j-i)(s-i)) lifts.
    mpz_class total = 0;
    for (int i = 0; i <= std::min(j, s); ++i) {
        if (j - i > c.d)
            continue;
        total += iso_nondegenerate(ctx, c.d, c.disc, j - i) * qfunc(ctx, QKind::Beta, s, i) *
                 ipow(ctx.p(), (j - i) * (s - i));
    }
    return total;
}

mpz_class rep_zero_full(const PrimeContext& ctx, const FormClass& c, int d)
{
    check_class(c);
    if (d < 0)
        throw UsageError("rep_zero_full: negative d");
    const mpz_class pd = ipow(ctx.p(), d);
    mpz_class total = 0;
    for (int j = 0; j <= std::min(d, c.n); ++j) {
        mpz_class spanning = 1;
        for (int i = 0; i < j; ++i)
            spanning *= pd - ipow(ctx.p(), i);
        total += iso_count(ctx, c, j) * spanning;
    }
    return total;
}

} // namespace isogauss
