#include "pcurv/matrix.hpp"

#include "pcurv/errors.hpp"

namespace pcurv {

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring_)) {}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Poly> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw DimensionError("matrix entry count does not match its shape");
    for (auto& e : data_) {
        if (!e.ring()) e = Poly(ring_);
        if (!same_ring(e.ring(), ring_)) throw MismatchError("matrix entry over a different ring");
    }
}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(ring, 1);
    return m;
}

void PolyMatrix::check_shape(const PolyMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shapes differ");
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
    check_shape(other);
    PolyMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += other.data_[i];
    return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
    check_shape(other);
    PolyMatrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= other.data_[i];
    return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
    if (cols_ != other.rows_) throw DimensionError("matrix shapes do not compose");
    PolyMatrix r(ring_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Poly& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                if (!other(k, j).is_zero()) r(i, j) += a * other(k, j);
        }
    return r;
}

PolyMatrix PolyMatrix::scaled(const Poly& f) const {
    PolyMatrix r = *this;
    for (auto& e : r.data_) e = f * e;
    return r;
}

PolyMatrix PolyMatrix::pow(std::uint64_t k) const {
    if (!square()) throw DimensionError("power of a non-square matrix");
    PolyMatrix result = identity(ring_, rows_);
    PolyMatrix base = *this;
    while (k != 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k != 0) base = base * base;
    }
    return result;
}

PolyMatrix PolyMatrix::commutator(const PolyMatrix& other) const { return *this * other - other * *this; }

PolyMatrix PolyMatrix::derived(const Derivation& nu) const {
    PolyMatrix r = *this;
    for (auto& e : r.data_) e = nu.apply(e);
    return r;
}

PolyMatrix PolyMatrix::lift(const RingPtr& target) const {
    PolyMatrix r(target, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].lift(target);
    return r;
}

Poly PolyMatrix::trace() const {
    if (!square()) throw DimensionError("trace of a non-square matrix");
    Poly t(ring_);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

Poly PolyMatrix::determinant() const {
    if (!square()) throw DimensionError("determinant of a non-square matrix");
    if (rows_ > 16) throw ResourceError("determinant expansion limited to rank 16");
    if (rows_ == 0) return Poly::constant(ring_, 1);
    // minors[mask] = det of the bottom |mask| rows against the columns in mask
    const std::size_t n = rows_;
    std::vector<Poly> minors(std::size_t{1} << n, Poly(ring_));
    minors[0] = Poly::constant(ring_, 1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(mask));
        Poly acc(ring_);
        std::size_t position = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            const Poly& entry = (*this)(row, c);
            const Poly& sub = minors[mask & ~(1u << c)];
            if (!entry.is_zero() && !sub.is_zero()) {
                if (position % 2 == 0)
                    acc += entry * sub;
                else
                    acc -= entry * sub;
            }
            ++position;
        }
        minors[mask] = std::move(acc);
    }
    return minors[(1u << n) - 1];
}

bool PolyMatrix::is_zero() const noexcept {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
    return out;
}

std::string PolyMatrix::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        out += i ? ", [" : "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out += ", ";
            out += (*this)(i, j).to_string();
        }
        out += "]";
    }
    return out + "]";
}

bool PolyMatrix::operator==(const PolyMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

}  // namespace pcurv
