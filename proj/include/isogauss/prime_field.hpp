#pragma once

#include <cstdint>
#include <vector>

namespace isogauss {

/// Residues are kept as plain ints in [0, p).
using Elem = std::int32_t;

/// An odd prime p with its canonical nonsquare and epsilon = (-1 / p).
///
/// Immutable after construction. Precomputes inverse and Legendre tables,
/// so p is limited to primes below max_prime().
class PrimeContext {
public:
    explicit PrimeContext(int p);

    static constexpr int max_prime() { return 65521; }

    int p() const { return p_; }
    Elem omega() const { return omega_; }
    int epsilon() const { return epsilon_; }

    Elem reduce(long long a) const
    {
        long long r = a % p_;
        return static_cast<Elem>(r < 0 ? r + p_ : r);
    }
    Elem add(Elem a, Elem b) const { return static_cast<Elem>((a + b) % p_); }
    Elem sub(Elem a, Elem b) const { return static_cast<Elem>((a - b + p_) % p_); }
    Elem neg(Elem a) const { return a == 0 ? 0 : static_cast<Elem>(p_ - a); }
    Elem mul(Elem a, Elem b) const
    {
        return static_cast<Elem>((static_cast<long long>(a) * b) % p_);
    }
    /// Inverse of a nonzero residue.
    Elem inv(Elem a) const { return inverse_[static_cast<std::size_t>(a)]; }

    /// Legendre symbol of a reduced residue: 0, +1 or -1.
    int legendre(Elem a) const { return chi_[static_cast<std::size_t>(a)]; }

    bool operator==(const PrimeContext& o) const { return p_ == o.p_; }

private:
    int p_;
    Elem omega_;
    int epsilon_;
    std::vector<Elem> inverse_;
    std::vector<std::int8_t> chi_;
};

bool is_prime(long long n);

int legendre(const PrimeContext& ctx, Elem a);
int epsilon(const PrimeContext& ctx);
Elem canonical_nonsquare(const PrimeContext& ctx);

} // namespace isogauss
