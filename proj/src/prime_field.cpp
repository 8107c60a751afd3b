#include "isogauss/prime_field.hpp"

#include "isogauss/errors.hpp"

#include <string>

namespace isogauss {

bool is_prime(long long n)
{
    if (n < 2)
        return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeContext::PrimeContext(int p) : p_(p), omega_(0), epsilon_(0)
{
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw UsageError("p must be an odd prime, got " + std::to_string(p));
    if (p > max_prime())
        throw UsageError("p too large: " + std::to_string(p));

    const auto n = static_cast<std::size_t>(p);
    chi_.assign(n, -1);
    chi_[0] = 0;
    for (long long x = 1; x < p; ++x)
        chi_[static_cast<std::size_t>(x * x % p)] = 1;

    inverse_.assign(n, 0);
    for (Elem a = 1; a < p; ++a) {
        // Fermat: a^(p-2)
        long long r = 1, b = a;
        for (int e = p - 2; e > 0; e >>= 1) {
            if (e & 1)
                r = r * b % p;
            b = b * b % p;
        }
        inverse_[static_cast<std::size_t>(a)] = static_cast<Elem>(r);
    }

    for (Elem a = 1; a < p; ++a) {
        if (chi_[static_cast<std::size_t>(a)] == -1) {
            omega_ = a;
            break;
        }
    }
    epsilon_ = chi_[n - 1];
}

int legendre(const PrimeContext& ctx, Elem a) { return ctx.legendre(ctx.reduce(a)); }

int epsilon(const PrimeContext& ctx) { return ctx.epsilon(); }

Elem canonical_nonsquare(const PrimeContext& ctx) { return ctx.omega(); }

} // namespace isogauss
