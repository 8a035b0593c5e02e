#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcurv/algebroid.hpp"
#include "pcurv/matrix.hpp"
#include "pcurv/operator.hpp"
#include "pcurv/report.hpp"

namespace pcurv {

/// A free module E = O_X^r with nabla_{e_a}(s) = delta_a(s) + A_a s.
class LambdaModule {
public:
    LambdaModule(AlgebroidPtr algebroid, std::size_t rank, std::vector<PolyMatrix> matrices);

    const AlgebroidPtr& algebroid() const noexcept { return algebroid_; }
    const RingPtr& ring() const noexcept { return algebroid_->ring(); }
    std::size_t rank() const noexcept { return rank_; }
    const PolyMatrix& matrix(std::size_t a) const { return matrices_.at(a); }
    const std::vector<PolyMatrix>& matrices() const noexcept { return matrices_; }

private:
    AlgebroidPtr algebroid_;
    std::size_t rank_;
    std::vector<PolyMatrix> matrices_;
};

using ModulePtr = std::shared_ptr<const LambdaModule>;

/// r x r matrix of differential operators acting on O_X^r. Entries live in
/// the tangent algebroid's enveloping algebra modulo the central elements
/// d_j^p, which act as zero on O_X; the quotient acts faithfully, so equality
/// and the order of an operator are decided on normal forms.
class MatrixDiffOp {
public:
    MatrixDiffOp() = default;
    MatrixDiffOp(AlgebroidPtr weyl, std::size_t rank);  // zero operator

    static MatrixDiffOp identity(const AlgebroidPtr& weyl, std::size_t rank);
    static MatrixDiffOp multiplication(const AlgebroidPtr& weyl, const PolyMatrix& m);
    /// nu acting diagonally on each component.
    static MatrixDiffOp derivation(const AlgebroidPtr& weyl, std::size_t rank, const Derivation& nu);

    const AlgebroidPtr& weyl() const noexcept { return weyl_; }
    std::size_t rank() const noexcept { return rank_; }
    const OperatorElement& operator()(std::size_t i, std::size_t j) const { return data_[i * rank_ + j]; }

    MatrixDiffOp operator+(const MatrixDiffOp& other) const;
    MatrixDiffOp operator-(const MatrixDiffOp& other) const;
    MatrixDiffOp operator*(const MatrixDiffOp& other) const;
    /// Left multiplication by a function.
    MatrixDiffOp scaled(const Poly& f) const;
    MatrixDiffOp pow(std::uint64_t k) const;
    bool is_zero() const noexcept;
    /// Highest differential order among the entries.
    std::size_t order() const noexcept;
    /// The matrix of functions when the operator has order 0.
    std::optional<PolyMatrix> order_zero() const;
    std::vector<Poly> apply(const std::vector<Poly>& section) const;
    std::string to_string() const;
    bool operator==(const MatrixDiffOp& other) const;

private:
    OperatorElement& at(std::size_t i, std::size_t j) { return data_[i * rank_ + j]; }
    AlgebroidPtr weyl_;
    std::size_t rank_ = 0;
    std::vector<OperatorElement> data_;
};

/// Drop PBW terms with some exponent >= p (tangent algebroid only).
OperatorElement truncate_p(const OperatorElement& op);

/// Tangent algebroid of the module's ring, shared by all operators of one module.
AlgebroidPtr weyl_algebroid(const LambdaModule& module);

/// nabla_D = f Id + sum g_a (delta_a + A_a) for D = f + sum g_a e_a.
MatrixDiffOp nabla_of(const LambdaModule& module, const FirstOrder& d);
MatrixDiffOp nabla_of(const LambdaModule& module, const AlgebroidPtr& weyl, const FirstOrder& d);

/// nabla_z = sum f_beta nabla_1^b1 ... nabla_m^bm for z in the enveloping algebra.
MatrixDiffOp represent(const LambdaModule& module, const OperatorElement& z);

/// [nabla_a, nabla_b] - nabla_[e_a, e_b] = 0 for all a < b.
ValidationReport validate_flatness(const LambdaModule& module);

struct PCurvature {
    ModulePtr module;
    std::vector<PolyMatrix> psi;  // psi_a = (nabla_a)^p - nabla_{e_a^[p]}
};

/// Throws MathError on a non-flat module unless allow_nonflat is set, and
/// whenever (nabla_a)^p - nabla_{e_a^[p]} keeps a differential part.
PCurvature p_curvature(const ModulePtr& module, bool allow_nonflat = false);

/// psi(D) = (nabla_D)^p - nabla_{D^[p]} for an arbitrary element of H.
PolyMatrix p_curvature_of(const LambdaModule& module, const FirstOrder& d);

/// psi_a against the action of iota(e_a) computed in the enveloping algebra.
ValidationReport check_iota_equivalence(const PCurvature& c);

/// psi(f e_a) from scratch against f^p psi_a, and psi(D) against sum g_a^p psi_a.
ValidationReport check_p_linearity(const PCurvature& c, const PanelOptions& options = {});

/// [psi_a, psi_b] = 0.
ValidationReport check_higgs_commutativity(const PCurvature& c);

/// psi_a commutes with nabla_b as operators, i.e. delta_b(psi_a) = [psi_a, A_b].
ValidationReport check_flat_commutation(const PCurvature& c);

/// Lift of a module to the Rees algebroid with unscaled connection matrices:
/// nabla^R_{e_a} = t delta_a + A_a. Throws MathError when the lift is not flat.
ModulePtr rees_module(const LambdaModule& module, const AlgebroidPtr& rees);

/// Fibre of a module over a Rees algebroid at t = value.
ModulePtr specialize_t(const LambdaModule& module, Coeff value);

}  // namespace pcurv
