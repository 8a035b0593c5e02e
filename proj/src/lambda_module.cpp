#include "pcurv/lambda_module.hpp"

#include <map>
#include <sstream>

#include "pcurv/errors.hpp"
#include "pcurv/random.hpp"

namespace pcurv {

LambdaModule::LambdaModule(AlgebroidPtr algebroid, std::size_t rank, std::vector<PolyMatrix> matrices)
    : algebroid_(std::move(algebroid)), rank_(rank), matrices_(std::move(matrices)) {
    if (!algebroid_) throw InputError("module needs an algebroid");
    if (rank_ == 0) throw DimensionError("module rank must be positive");
    if (matrices_.size() != algebroid_->rank()) throw DimensionError("one connection matrix per generator");
    for (const auto& m : matrices_) {
        if (m.rows() != rank_ || m.cols() != rank_) throw DimensionError("connection matrices must be rank x rank");
        if (!same_ring(m.ring(), algebroid_->ring())) throw MismatchError("connection matrix over a different ring");
    }
}

OperatorElement truncate_p(const OperatorElement& op) {
    if (!op.algebroid()) return op;
    const std::uint32_t p = op.algebroid()->ring()->characteristic();
    OperatorElement r(op.algebroid());
    for (const auto& [beta, f] : op.terms()) {
        bool keep = true;
        for (auto e : beta) keep = keep && e < p;
        if (keep) r.add_term(beta, f);
    }
    return r;
}

MatrixDiffOp::MatrixDiffOp(AlgebroidPtr weyl, std::size_t rank)
    : weyl_(std::move(weyl)), rank_(rank), data_(rank * rank, OperatorElement(weyl_)) {}

MatrixDiffOp MatrixDiffOp::identity(const AlgebroidPtr& weyl, std::size_t rank) {
    MatrixDiffOp m(weyl, rank);
    for (std::size_t i = 0; i < rank; ++i) m.at(i, i) = OperatorElement::one(weyl);
    return m;
}

MatrixDiffOp MatrixDiffOp::multiplication(const AlgebroidPtr& weyl, const PolyMatrix& a) {
    if (!a.square()) throw DimensionError("multiplication operator needs a square matrix");
    MatrixDiffOp m(weyl, a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = OperatorElement::function(weyl, a(i, j));
    return m;
}

MatrixDiffOp MatrixDiffOp::derivation(const AlgebroidPtr& weyl, std::size_t rank, const Derivation& nu) {
    MatrixDiffOp m(weyl, rank);
    OperatorElement d = OperatorElement::from_first_order(weyl, FirstOrder::of_components(weyl->ring(), nu.components()));
    for (std::size_t i = 0; i < rank; ++i) m.at(i, i) = d;
    return m;
}

MatrixDiffOp MatrixDiffOp::operator+(const MatrixDiffOp& other) const {
    if (rank_ != other.rank_) throw DimensionError("operator matrices of different rank");
    MatrixDiffOp r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += other.data_[i];
    return r;
}

MatrixDiffOp MatrixDiffOp::operator-(const MatrixDiffOp& other) const {
    if (rank_ != other.rank_) throw DimensionError("operator matrices of different rank");
    MatrixDiffOp r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= other.data_[i];
    return r;
}

MatrixDiffOp MatrixDiffOp::operator*(const MatrixDiffOp& other) const {
    if (rank_ != other.rank_) throw DimensionError("operator matrices of different rank");
    MatrixDiffOp r(weyl_, rank_);
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j) {
            OperatorElement sum(weyl_);
            for (std::size_t k = 0; k < rank_; ++k) {
                const auto& a = (*this)(i, k);
                const auto& b = other(k, j);
                if (!a.is_zero() && !b.is_zero()) sum += a * b;
            }
            r.at(i, j) = truncate_p(sum);
        }
    return r;
}

MatrixDiffOp MatrixDiffOp::scaled(const Poly& f) const {
    MatrixDiffOp r(weyl_, rank_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].scaled(f);
    return r;
}

MatrixDiffOp MatrixDiffOp::pow(std::uint64_t k) const {
    MatrixDiffOp r = identity(weyl_, rank_);
    for (std::uint64_t i = 0; i < k; ++i) r = *this * r;
    return r;
}

bool MatrixDiffOp::is_zero() const noexcept {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

std::size_t MatrixDiffOp::order() const noexcept {
    std::size_t d = 0;
    for (const auto& e : data_) d = std::max(d, e.degree());
    return d;
}

std::optional<PolyMatrix> MatrixDiffOp::order_zero() const {
    if (order() > 0) return std::nullopt;
    PolyMatrix m(weyl_->ring(), rank_, rank_);
    const MultiIndex none(weyl_->rank(), 0);
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j) m(i, j) = (*this)(i, j).coefficient(none);
    return m;
}

std::vector<Poly> MatrixDiffOp::apply(const std::vector<Poly>& section) const {
    if (section.size() != rank_) throw DimensionError("section has the wrong rank");
    std::vector<Poly> out(rank_, Poly(weyl_->ring()));
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = 0; j < rank_; ++j)
            for (const auto& [beta, f] : (*this)(i, j).terms()) {
                Poly s = section[j];
                for (std::size_t a = beta.size(); a-- > 0;) s = weyl_->anchor(a).iterate(s, beta[a]);
                out[i] += f * s;
            }
    return out;
}

std::string MatrixDiffOp::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rank_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < rank_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
    }
    os << "]";
    return os.str();
}

bool MatrixDiffOp::operator==(const MatrixDiffOp& other) const {
    return rank_ == other.rank_ && data_ == other.data_;
}

AlgebroidPtr weyl_algebroid(const LambdaModule& module) { return tangent_algebroid(module.ring()); }

MatrixDiffOp nabla_of(const LambdaModule& module, const AlgebroidPtr& weyl, const FirstOrder& d) {
    const auto& alg = *module.algebroid();
    if (d.rank() != alg.rank()) throw DimensionError("element rank does not match algebroid");
    const std::size_t r = module.rank();
    MatrixDiffOp result = MatrixDiffOp::identity(weyl, r).scaled(d.function);
    for (std::size_t a = 0; a < alg.rank(); ++a) {
        const Poly& g = d.components[a];
        if (g.is_zero()) continue;
        MatrixDiffOp na = MatrixDiffOp::derivation(weyl, r, alg.anchor(a)) +
                          MatrixDiffOp::multiplication(weyl, module.matrix(a));
        result = result + na.scaled(g);
    }
    return result;
}

MatrixDiffOp nabla_of(const LambdaModule& module, const FirstOrder& d) {
    return nabla_of(module, weyl_algebroid(module), d);
}

MatrixDiffOp represent(const LambdaModule& module, const OperatorElement& z) {
    const auto& alg = module.algebroid();
    const std::size_t m = alg->rank();
    AlgebroidPtr weyl = weyl_algebroid(module);
    std::vector<MatrixDiffOp> gens;
    for (std::size_t a = 0; a < m; ++a) gens.push_back(nabla_of(module, weyl, FirstOrder::generator(alg->ring(), m, a)));
    std::map<std::pair<std::size_t, std::uint32_t>, MatrixDiffOp> powers;
    auto power = [&](std::size_t a, std::uint32_t k) -> const MatrixDiffOp& {
        auto key = std::make_pair(a, k);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, gens[a].pow(k)).first;
        return it->second;
    };
    MatrixDiffOp result(weyl, module.rank());
    for (const auto& [beta, f] : z.terms()) {
        MatrixDiffOp word = MatrixDiffOp::identity(weyl, module.rank());
        for (std::size_t a = 0; a < m; ++a)
            if (beta[a] > 0) word = word * power(a, beta[a]);
        result = result + word.scaled(f);
    }
    return result;
}

ValidationReport validate_flatness(const LambdaModule& module) {
    ValidationReport report;
    report.title = "module flatness";
    const auto& alg = module.algebroid();
    const std::size_t m = alg->rank();
    AlgebroidPtr weyl = weyl_algebroid(module);
    std::vector<MatrixDiffOp> gens;
    for (std::size_t a = 0; a < m; ++a) gens.push_back(nabla_of(module, weyl, FirstOrder::generator(alg->ring(), m, a)));
    CheckBuilder flat("flatness", "module");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            MatrixDiffOp curvature = gens[a] * gens[b] - gens[b] * gens[a] -
                                     nabla_of(module, weyl, FirstOrder::of_components(alg->ring(), alg->bracket(a, b)));
            flat.record(curvature.is_zero(), [&] {
                return "curvature(" + alg->generator_name(a) + "," + alg->generator_name(b) + ") = " + curvature.to_string();
            });
        }
    if (m < 2) flat.note("single generator");
    CheckResult r = flat.finish();
    if (r.status == CheckStatus::Skipped) r.status = CheckStatus::Pass;
    report.checks.push_back(r);
    return report;
}

PolyMatrix p_curvature_of(const LambdaModule& module, const FirstOrder& d) {
    const auto& alg = module.algebroid();
    const std::uint32_t p = alg->ring()->characteristic();
    AlgebroidPtr weyl = weyl_algebroid(module);
    MatrixDiffOp psi = nabla_of(module, weyl, d).pow(p) - nabla_of(module, weyl, restricted_power(alg, d));
    auto m = psi.order_zero();
    if (!m)
        throw MathError("p-curvature of " + to_string(d, *alg) + " has a differential part: " + psi.to_string());
    return *m;
}

PCurvature p_curvature(const ModulePtr& module, bool allow_nonflat) {
    if (!allow_nonflat) {
        auto report = validate_flatness(*module);
        if (!report.passed()) throw MathError("module is not flat: " + report.checks.front().witness);
    }
    PCurvature c{module, {}};
    const auto& alg = module->algebroid();
    for (std::size_t a = 0; a < alg->rank(); ++a)
        c.psi.push_back(p_curvature_of(*module, FirstOrder::generator(alg->ring(), alg->rank(), a)));
    return c;
}

namespace {

PolyMatrix psi_combination(const PCurvature& c, const FirstOrder& d) {
    const auto& ring = c.module->ring();
    const std::uint32_t p = ring->characteristic();
    PolyMatrix sum(ring, c.module->rank(), c.module->rank());
    for (std::size_t a = 0; a < d.rank(); ++a)
        if (!d.components[a].is_zero()) sum = sum + c.psi[a].scaled(d.components[a].pow(p));
    return sum;
}

}  // namespace

ValidationReport check_iota_equivalence(const PCurvature& c) {
    ValidationReport report;
    report.title = "p-curvature against iota";
    const auto& module = *c.module;
    const auto& alg = module.algebroid();
    const std::size_t m = alg->rank();
    CheckBuilder eq("iota-equivalence", "p-curvature");
    for (std::size_t a = 0; a < m; ++a) {
        OperatorElement z = iota(OperatorElement::generator(alg, a), false);
        auto rep = represent(module, z).order_zero();
        eq.record(rep && *rep == c.psi[a], [&] {
            return "psi(" + alg->generator_name(a) + ") = " + c.psi[a].to_string() + " but nabla_iota = " +
                   (rep ? rep->to_string() : represent(module, z).to_string());
        });
    }
    report.checks.push_back(eq.finish());
    return report;
}

ValidationReport check_p_linearity(const PCurvature& c, const PanelOptions& options) {
    ValidationReport report;
    report.title = "p-linearity of the p-curvature";
    const auto& module = *c.module;
    const auto& alg = module.algebroid();
    const RingPtr& ring = alg->ring();
    const std::size_t m = alg->rank();
    const std::uint32_t p = ring->characteristic();
    AlgebroidPtr weyl = weyl_algebroid(module);
    const auto panel = function_panel(ring, options.degree, options.random, options.seed);

    CheckBuilder lin("p-linearity", "p-curvature", true);
    for (std::size_t a = 0; a < m; ++a)
        for (const Poly& f : panel) {
            // (f e_a)^[p] = f^p e_a^[p] + delta_{f e_a}^(p-1)(f) e_a
            FirstOrder fe = FirstOrder::zero(ring, m);
            fe.components[a] = f;
            FirstOrder fe_p = alg->p_op(a).scaled(f.pow(p));
            fe_p.components[a] += alg->anchor(a).scaled(f).iterate(f, p - 1);
            MatrixDiffOp psi = nabla_of(module, weyl, fe).pow(p) - nabla_of(module, weyl, fe_p);
            auto lhs = psi.order_zero();
            PolyMatrix rhs = c.psi[a].scaled(f.pow(p));
            lin.record(lhs && *lhs == rhs, [&] {
                return "f = " + f.to_string() + ", generator " + alg->generator_name(a) + ": psi(f e) = " +
                       (lhs ? lhs->to_string() : psi.to_string()) + ", f^p psi = " + rhs.to_string();
            });
        }
    report.checks.push_back(lin.finish());

    CheckBuilder add("additivity", "p-curvature", true);
    CheckBuilder via_iota("iota-equivalence-random", "p-curvature", true);
    Rng rng(options.seed);
    for (std::size_t i = 0; i < options.trials; ++i) {
        FirstOrder d = random_first_order(alg, rng, options.degree, false);
        PolyMatrix lhs = p_curvature_of(module, d);
        PolyMatrix rhs = psi_combination(c, d);
        add.record(lhs == rhs, [&] { return "D = " + to_string(d, *alg); });
        auto rep = represent(module, iota(OperatorElement::from_first_order(alg, d), false)).order_zero();
        via_iota.record(rep && *rep == lhs, [&] { return "D = " + to_string(d, *alg); });
    }
    report.checks.push_back(add.finish());
    report.checks.push_back(via_iota.finish());
    return report;
}

ValidationReport check_higgs_commutativity(const PCurvature& c) {
    ValidationReport report;
    report.title = "p-curvature Higgs field";
    const auto& alg = c.module->algebroid();
    CheckBuilder comm("commutativity", "p-curvature");
    for (std::size_t a = 0; a < c.psi.size(); ++a)
        for (std::size_t b = a; b < c.psi.size(); ++b) {
            PolyMatrix k = c.psi[a].commutator(c.psi[b]);
            comm.record(k.is_zero(), [&] {
                return "[psi(" + alg->generator_name(a) + "), psi(" + alg->generator_name(b) + ")] = " + k.to_string();
            });
        }
    report.checks.push_back(comm.finish());
    return report;
}

ValidationReport check_flat_commutation(const PCurvature& c) {
    ValidationReport report;
    report.title = "p-curvature is horizontal";
    const auto& module = *c.module;
    const auto& alg = module.algebroid();
    const std::size_t m = alg->rank();
    AlgebroidPtr weyl = weyl_algebroid(module);
    CheckBuilder flat("flat-commutation", "p-curvature");
    for (std::size_t a = 0; a < m; ++a) {
        MatrixDiffOp psi = MatrixDiffOp::multiplication(weyl, c.psi[a]);
        for (std::size_t b = 0; b < m; ++b) {
            MatrixDiffOp nb = nabla_of(module, weyl, FirstOrder::generator(alg->ring(), m, b));
            MatrixDiffOp k = psi * nb - nb * psi;
            flat.record(k.is_zero(), [&] {
                return "[psi(" + alg->generator_name(a) + "), nabla(" + alg->generator_name(b) + ")] = " + k.to_string() +
                       "; delta(psi) = " + c.psi[a].derived(alg->anchor(b)).to_string() +
                       ", [psi, A] = " + c.psi[a].commutator(module.matrix(b)).to_string();
            });
        }
    }
    report.checks.push_back(flat.finish());
    return report;
}

ModulePtr rees_module(const LambdaModule& module, const AlgebroidPtr& rees) {
    if (!rees->ring()->has_rees()) throw InputError("target algebroid has no Rees variable");
    if (rees->rank() != module.algebroid()->rank()) throw DimensionError("Rees algebroid has a different rank");
    std::vector<PolyMatrix> mats;
    for (const auto& m : module.matrices()) mats.push_back(m.lift(rees->ring()));
    auto lifted = std::make_shared<const LambdaModule>(rees, module.rank(), std::move(mats));
    auto report = validate_flatness(*lifted);
    if (!report.passed())
        throw MathError("unscaled Rees lift is not flat (" + report.checks.front().witness +
                        "); supply explicit Rees connection matrices");
    return lifted;
}

ModulePtr specialize_t(const LambdaModule& module, Coeff value) {
    const RingPtr& source = module.ring();
    if (!source->has_rees()) throw InputError("module has no Rees variable");
    const std::size_t var = *source->rees_index();
    AlgebroidPtr fibre = specialize_t(*module.algebroid(), value);
    std::vector<PolyMatrix> mats;
    for (const auto& m : module.matrices()) {
        PolyMatrix s(fibre->ring(), m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) s(i, j) = m(i, j).specialize(var, value, fibre->ring());
        mats.push_back(std::move(s));
    }
    return std::make_shared<const LambdaModule>(fibre, module.rank(), std::move(mats));
}

}  // namespace pcurv
