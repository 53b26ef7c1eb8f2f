#include "ringgeom/ring_core.hpp"

#include <numeric>
#include <sstream>

namespace ringgeom {

Modulus::Modulus(std::uint64_t n) : n_(n), tau_(1) {
    if (n < 3) throw Error("modulus must be at least 3, got " + std::to_string(n));
    if (n % 2 == 0) throw Error("modulus must be odd, got " + std::to_string(n));
    if (n > max_value) throw Error("modulus exceeds 2^40: " + std::to_string(n));

    std::uint64_t rest = n;
    for (std::uint64_t p = 3; p * p <= rest; p += 2) {
        if (rest % p != 0) continue;
        PrimePower pp{p, 0};
        while (rest % p == 0) {
            rest /= p;
            ++pp.exponent;
        }
        factors_.push_back(pp);
    }
    if (rest > 1) factors_.push_back({rest, 1});
    for (const auto& pp : factors_) tau_ *= pp.exponent + 1;
}

Residue Modulus::reduce(std::int64_t x) const noexcept {
    const auto sn = static_cast<std::int64_t>(n_);
    std::int64_t r = x % sn;
    return static_cast<Residue>(r < 0 ? r + sn : r);
}

Residue Modulus::add(Residue a, Residue b) const noexcept {
    const Residue s = a + b;
    return s >= n_ ? s - n_ : s;
}

Residue Modulus::sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + n_ - b; }

Residue Modulus::mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % n_);
}

Modulus factorize(std::uint64_t n) { return Modulus(n); }

ValuationVector val_vec(Residue s, const Modulus& m) {
    ValuationVector v;
    v.beta.reserve(m.factors().size());
    s %= m.n();
    for (const auto& pp : m.factors()) {
        if (s == 0) {
            v.beta.push_back(pp.exponent);
            continue;
        }
        unsigned b = 0;
        std::uint64_t rest = s;
        while (b < pp.exponent && rest % pp.prime == 0) {
            rest /= pp.prime;
            ++b;
        }
        v.beta.push_back(b);
    }
    return v;
}

std::uint64_t kernel_size(const Modulus& m, Residue mult, unsigned d) {
    if (d == 0) throw Error("kernel_size: dimension must be positive");
    const std::uint64_t g = std::gcd(mult % m.n(), m.n());  // gcd(0, n) = n
    return checked_pow(g, d);
}

bool is_unit(Residue s, const Modulus& m) { return std::gcd(s % m.n(), m.n()) == 1; }

std::uint64_t euler_phi(const Modulus& m) {
    std::uint64_t phi = 1;
    for (const auto& pp : m.factors()) {
        phi *= pp.prime - 1;
        for (unsigned i = 1; i < pp.exponent; ++i) phi *= pp.prime;
    }
    return phi;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) throw Error("integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

std::string to_string(const Modulus& m) {
    std::ostringstream os;
    os << m.n() << " =";
    bool first = true;
    for (const auto& pp : m.factors()) {
        os << (first ? " " : " * ") << pp.prime;
        if (pp.exponent > 1) os << '^' << pp.exponent;
        first = false;
    }
    return os.str();
}

}  // namespace ringgeom
