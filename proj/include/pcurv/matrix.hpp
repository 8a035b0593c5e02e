#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pcurv/derivation.hpp"
#include "pcurv/poly.hpp"

namespace pcurv {

/// Dense matrix with polynomial entries over a single ring.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);  // zero matrix
    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Poly> entries);

    static PolyMatrix identity(RingPtr ring, std::size_t n);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    PolyMatrix operator+(const PolyMatrix& other) const;
    PolyMatrix operator-(const PolyMatrix& other) const;
    PolyMatrix operator*(const PolyMatrix& other) const;
    PolyMatrix scaled(const Poly& f) const;
    PolyMatrix pow(std::uint64_t k) const;
    PolyMatrix commutator(const PolyMatrix& other) const;
    /// Entrywise application of a derivation.
    PolyMatrix derived(const Derivation& nu) const;
    PolyMatrix lift(const RingPtr& target) const;

    Poly trace() const;
    /// Division-free Laplace expansion (memoized over column subsets); fine for small ranks.
    Poly determinant() const;
    bool is_zero() const noexcept;

    std::vector<std::vector<std::string>> to_strings() const;
    std::string to_string() const;

    bool operator==(const PolyMatrix& other) const;

private:
    void check_shape(const PolyMatrix& other) const;

    RingPtr ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Poly> data_;
};

}  // namespace pcurv
