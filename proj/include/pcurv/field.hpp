#pragma once

#include <cstdint>
#include <string>

namespace pcurv {

using Coeff = std::uint32_t;

/// The prime field F_p. Elements are canonical residues in [0, p).
class PrimeField {
public:
    /// Throws InputError unless p is a prime below 2^31.
    explicit PrimeField(std::uint64_t p);

    std::uint32_t characteristic() const noexcept { return p_; }

    /// p = 2 is accepted for algebra-only work; the descent results need p > 2.
    bool is_even() const noexcept { return p_ == 2; }

    Coeff reduce(std::int64_t value) const noexcept;
    Coeff reduce_unsigned(std::uint64_t value) const noexcept { return static_cast<Coeff>(value % p_); }

    Coeff add(Coeff a, Coeff b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Coeff mul(Coeff a, Coeff b) const noexcept {
        return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Coeff pow(Coeff a, std::uint64_t e) const noexcept;
    /// Fermat inverse a^(p-2). Throws MathError for a = 0.
    Coeff inv(Coeff a) const;

    bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

}  // namespace pcurv
