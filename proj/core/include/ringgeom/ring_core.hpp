#pragma once

// Exact arithmetic over Z_n for odd n, plus the number-theoretic helpers
// (factorization, divisor count, smallest prime, p-adic valuations) that the
// geometry modules consume.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringgeom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact computation would exceed its configured work budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A canonical representative in [0, n).
using Residue = std::uint64_t;

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// An odd modulus n >= 3 together with its factorization.
class Modulus {
public:
    static constexpr std::uint64_t max_value = std::uint64_t{1} << 40;

    /// Factorizes n by trial division. Throws Error for even n, n < 3 or
    /// n > 2^40.
    explicit Modulus(std::uint64_t n);

    std::uint64_t n() const noexcept { return n_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }

    /// Number of positive divisors.
    std::uint64_t tau() const noexcept { return tau_; }
    /// Smallest prime divisor.
    std::uint64_t gamma() const noexcept { return factors_.front().prime; }

    Residue reduce(std::int64_t x) const noexcept;
    Residue add(Residue a, Residue b) const noexcept;
    Residue sub(Residue a, Residue b) const noexcept;
    Residue mul(Residue a, Residue b) const noexcept;

    /// True when n = p^ell for a single prime p.
    bool is_prime_power() const noexcept { return factors_.size() == 1; }

    friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.n_ == b.n_; }

private:
    std::uint64_t n_;
    std::vector<PrimePower> factors_;
    std::uint64_t tau_;
};

Modulus factorize(std::uint64_t n);

/// p-adic valuations of s, one per prime factor of the modulus.
struct ValuationVector {
    std::vector<unsigned> beta;

    friend bool operator==(const ValuationVector&, const ValuationVector&) = default;
};

/// Valuation of s at each prime of the modulus, capped at the prime's
/// exponent. s = 0 maps to the exponents themselves.
ValuationVector val_vec(Residue s, const Modulus& m);

/// |{y in Z_n^d : mult * y == 0}| = gcd(mult, n)^d.
std::uint64_t kernel_size(const Modulus& m, Residue mult, unsigned d);

bool is_unit(Residue s, const Modulus& m);

/// Euler phi from the factorization.
std::uint64_t euler_phi(const Modulus& m);

/// Checked integer power; throws Error on overflow of 64 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

std::string to_string(const Modulus& m);

}  // namespace ringgeom
