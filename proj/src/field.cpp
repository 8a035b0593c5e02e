#include "pcurv/field.hpp"

#include "pcurv/errors.hpp"

namespace pcurv {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
        throw InputError("characteristic " + std::to_string(p) + " is not a supported prime");
    p_ = static_cast<std::uint32_t>(p);
}

Coeff PrimeField::reduce(std::int64_t value) const noexcept {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Coeff>(r);
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const noexcept {
    Coeff result = 1 % p_;
    Coeff base = a;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Coeff PrimeField::inv(Coeff a) const {
    if (a % p_ == 0) throw MathError("inverse of zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

}  // namespace pcurv
