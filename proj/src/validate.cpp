#include "pcurv/algebroid.hpp"
#include "pcurv/errors.hpp"
#include "pcurv/operator.hpp"
#include "pcurv/random.hpp"

namespace pcurv {

namespace {

using Op = OperatorElement;

std::string describe(const AlgebroidPresentation& alg, const FirstOrder& d) { return to_string(d, alg); }

/// ad(d)^k (e)
Op ad_power(const Op& d, Op e, std::size_t k) {
    for (std::size_t i = 0; i < k && !e.is_zero(); ++i) e = commutator(d, e);
    return e;
}

Op sum_lie(const Op& x, const Op& y) {
    Op total(x.algebroid());
    for (const auto& s : lie_polynomials(x, y)) total += s;
    return total;
}

/// Elements of the first filtration piece used as test directions:
/// coordinate functions, generators and seeded random elements.
std::vector<Op> probe_elements(const AlgebroidPtr& alg, Rng& rng, const PanelOptions& options) {
    std::vector<Op> out;
    const RingPtr& ring = alg->ring();
    for (std::size_t var : ring->coordinates()) out.push_back(Op::function(alg, Poly::variable(ring, var)));
    for (std::size_t a = 0; a < alg->rank(); ++a) out.push_back(Op::generator(alg, a));
    for (std::size_t i = 0; i < options.trials / 3 + 1; ++i)
        out.push_back(Op::from_first_order(alg, random_first_order(alg, rng, options.degree)));
    return out;
}

Derivation anchor_of_first_order(const AlgebroidPresentation& alg, const FirstOrder& d) {
    return alg.anchor_of(d.components);
}

}  // namespace

ValidationReport validate_algebroid(const AlgebroidPtr& alg, const PanelOptions& options) {
    ValidationReport report;
    report.title = "algebroid axioms";
    const RingPtr& ring = alg->ring();
    const std::size_t m = alg->rank();

    CheckBuilder anti("antisymmetry", "algebroid");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b)
            for (std::size_t k = 0; k < m; ++k) {
                const Poly& ab = alg->bracket(a, b)[k];
                const Poly& ba = alg->bracket(b, a)[k];
                anti.record((ab + ba).is_zero(), [&] {
                    return "[" + alg->generator_name(a) + "," + alg->generator_name(b) + "] coefficient of " +
                           alg->generator_name(k) + ": " + ab.to_string() + " vs " + ba.to_string();
                });
            }
    report.checks.push_back(anti.finish());

    auto basis = [&](std::size_t a) {
        std::vector<Poly> v(m, Poly(ring));
        v[a] = Poly::constant(ring, 1);
        return v;
    };
    CheckBuilder jacobi("jacobi", "algebroid");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c) {
                auto ea = basis(a), eb = basis(b), ec = basis(c);
                auto j1 = alg->bracket_of(ea, alg->bracket_of(eb, ec));
                auto j2 = alg->bracket_of(eb, alg->bracket_of(ec, ea));
                auto j3 = alg->bracket_of(ec, alg->bracket_of(ea, eb));
                bool ok = true;
                for (std::size_t k = 0; k < m; ++k) ok = ok && (j1[k] + j2[k] + j3[k]).is_zero();
                jacobi.record(ok, [&] {
                    return "triple (" + alg->generator_name(a) + "," + alg->generator_name(b) + "," +
                           alg->generator_name(c) + ")";
                });
            }
    report.checks.push_back(jacobi.finish());

    // [e_a, f e_b] computed by rewriting in the enveloping algebra against
    // f [e_a, e_b] + delta_a(f) e_b from the presentation
    CheckBuilder leibniz("leibniz", "algebroid", true);
    const auto panel = function_panel(ring, options.degree, options.random, options.seed);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (const Poly& f : panel) {
                Op lhs = commutator(Op::generator(alg, a), Op::generator(alg, b).scaled(f));
                FirstOrder rhs = FirstOrder::of_components(ring, alg->bracket(a, b)).scaled(f);
                rhs.components[b] += alg->anchor(a).apply(f);
                bool ok = lhs == Op::from_first_order(alg, rhs);
                leibniz.record(ok, [&] {
                    return "[" + alg->generator_name(a) + ", (" + f.to_string() + ")*" + alg->generator_name(b) +
                           "] = " + lhs.to_string() + ", expected " + to_string(rhs, *alg);
                });
            }
    leibniz.note("panel of " + std::to_string(panel.size()) + " functions");
    report.checks.push_back(leibniz.finish());

    CheckBuilder anchor("anchor-bracket", "algebroid");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Derivation lhs = alg->anchor_of(alg->bracket(a, b));
            Derivation rhs = alg->anchor(a).bracket(alg->anchor(b));
            anchor.record(lhs == rhs, [&] {
                return "delta([" + alg->generator_name(a) + "," + alg->generator_name(b) + "]) = " + lhs.to_string() +
                       " but [delta, delta] = " + rhs.to_string();
            });
        }
    report.checks.push_back(anchor.finish());
    return report;
}

ValidationReport validate_p_structure(const AlgebroidPtr& alg, const PanelOptions& options) {
    ValidationReport report;
    report.title = "p-structure";
    const RingPtr& ring = alg->ring();
    const std::size_t m = alg->rank();
    const std::uint32_t p = ring->characteristic();
    Rng rng(options.seed);
    const auto panel = function_panel(ring, options.degree, options.random, options.seed);
    auto rand_h = [&] { return random_first_order(alg, rng, options.degree, false); };

    std::vector<FirstOrder> subjects;
    for (std::size_t a = 0; a < m; ++a) subjects.push_back(FirstOrder::generator(ring, m, a));
    for (std::size_t i = 0; i < options.trials; ++i) subjects.push_back(rand_h());

    CheckBuilder ad("ad-axiom", "p-structure", true);
    const auto probes = probe_elements(alg, rng, options);
    for (const auto& d : subjects) {
        Op dp = Op::from_first_order(alg, restricted_power(alg, d));
        Op dop = Op::from_first_order(alg, d);
        for (const auto& e : probes) {
            Op lhs = commutator(dp, e);
            Op rhs = ad_power(dop, e, p);
            ad.record(lhs == rhs, [&] {
                return "D = " + describe(*alg, d) + ", E = " + e.to_string() + ": [D^[p], E] = " + lhs.to_string() +
                       ", ad(D)^p(E) = " + rhs.to_string();
            });
        }
    }
    report.checks.push_back(ad.finish());

    CheckBuilder add("additivity", "p-structure", true);
    for (std::size_t i = 0; i < options.trials; ++i) {
        FirstOrder d1 = rand_h(), d2 = rand_h();
        FirstOrder lhs = restricted_power(alg, d1 + d2);
        FirstOrder rhs = restricted_power(alg, d1) + restricted_power(alg, d2) +
                         to_first_order(sum_lie(Op::from_first_order(alg, d1), Op::from_first_order(alg, d2)));
        add.record(lhs == rhs, [&] { return "D1 = " + describe(*alg, d1) + ", D2 = " + describe(*alg, d2); });
    }
    report.checks.push_back(add.finish());

    CheckBuilder scale("scaling", "p-structure", true);
    CheckBuilder hoch("katz-tangent", "p-structure", true);
    for (std::size_t i = 0; i < subjects.size(); ++i) {
        const FirstOrder& d = subjects[i];
        for (std::size_t j = i; j < panel.size(); j += subjects.size()) {
            const Poly& f = panel[j];
            FirstOrder fd = d.scaled(f);
            Derivation delta_fd = anchor_of_first_order(*alg, fd);
            FirstOrder rhs = restricted_power(alg, d).scaled(f.pow(p)) + d.scaled(delta_fd.iterate(f, p - 1));
            scale.record(restricted_power(alg, fd) == rhs,
                         [&] { return "f = " + f.to_string() + ", D = " + describe(*alg, d); });
            Poly left = delta_fd.iterate(f, p - 1);
            Poly right = -(f * anchor_of_first_order(*alg, d).iterate(f.pow(p - 1), p - 1));
            hoch.record(left == right, [&] { return "f = " + f.to_string() + ", D = " + describe(*alg, d); });
        }
    }
    report.checks.push_back(scale.finish());
    report.checks.push_back(hoch.finish());

    CheckBuilder fun("functions", "p-structure", true);
    for (const Poly& f : panel) {
        FirstOrder fp = restricted_power(alg, FirstOrder::of_function(f, m));
        fun.record(fp == FirstOrder::of_function(f.pow(p), m), [&] { return "f = " + f.to_string(); });
    }
    report.checks.push_back(fun.finish());

    CheckBuilder anchor("anchor-restricted", "anchor-restricted", true);
    for (const auto& d : subjects) {
        Derivation lhs = alg->anchor_of(restricted_power(alg, d).components);
        Derivation rhs = derivation_pth_power(alg->anchor_of(d.components));
        anchor.record(lhs == rhs, [&] {
            return "D = " + describe(*alg, d) + ": delta(D^[p]) = " + lhs.to_string() +
                   ", delta(D)^p = " + rhs.to_string();
        });
    }
    anchor.note("delta(D^[p]) = delta(D)^p; reported separately");
    report.checks.push_back(anchor.finish());
    return report;
}

AlgebroidPtr shift_p_structure(const AlgebroidPtr& alg, const PStructureShift& shift, const PanelOptions& options) {
    const std::size_t m = alg->rank();
    if (shift.phi.size() != m) throw DimensionError("shift needs one value per generator");
    std::vector<FirstOrder> p_op;
    for (std::size_t a = 0; a < m; ++a) {
        const FirstOrder& phi = shift.phi[a];
        if (phi.rank() != m) throw DimensionError("shift value has the wrong rank");
        if (!is_central(Op::from_first_order(alg, phi)))
            throw MathError("shift value phi(" + alg->generator_name(a) + ") = " + to_string(phi, *alg) +
                            " is not central");
        p_op.push_back(alg->p_op(a) + phi);
    }
    auto shifted = std::make_shared<const AlgebroidPresentation>(alg->with_p_op(std::move(p_op)));
    ValidationReport report = validate_p_structure(shifted, options);
    for (const auto& c : report.checks)
        if (c.section == "p-structure" && !c.ok())
            throw MathError("shifted p-structure fails " + c.name + ": " + c.witness);
    return shifted;
}

ValidationReport check_enveloping_p_structure(const AlgebroidPtr& alg, const PanelOptions& options) {
    ValidationReport report;
    report.title = "enveloping algebra p-structure";
    const RingPtr& ring = alg->ring();
    const std::size_t m = alg->rank();
    const std::uint32_t p = ring->characteristic();
    Rng rng(options.seed);
    PolyShape shape;
    shape.max_degree = options.degree;
    auto rand_l1 = [&] { return random_first_order(alg, rng, options.degree, true); };
    auto rand_f = [&] { return random_poly(ring, rng, shape); };
    auto op = [&](const FirstOrder& d) { return Op::from_first_order(alg, d); };
    auto pw = [&](const FirstOrder& d) { return restricted_power(alg, d); };
    auto delta = [&](const FirstOrder& d) { return alg->anchor_of(d.components); };
    const std::size_t trials = options.trials;

    CheckBuilder ad("ad-axiom", "enveloping", true);
    CheckBuilder add("additivity", "enveloping", true);
    CheckBuilder scale("scaling", "enveloping", true);
    CheckBuilder fun("functions", "enveloping", true);
    CheckBuilder jac("jacobson", "identities", true);
    CheckBuilder del("deligne", "identities", true);
    CheckBuilder ord0("extension-order0", "identities", true);
    CheckBuilder ind("induced-additivity", "identities", true);
    CheckBuilder itd("iterated-delta", "identities", true);
    const auto probes = probe_elements(alg, rng, options);

    for (std::size_t i = 0; i < trials; ++i) {
        FirstOrder d1 = rand_l1(), d2 = rand_l1();
        Poly f = rand_f(), g = rand_f();
        auto witness = [&] {
            return "D1 = " + describe(*alg, d1) + ", D2 = " + describe(*alg, d2) + ", f = " + f.to_string() +
                   ", g = " + g.to_string();
        };
        Op o1 = op(d1), o2 = op(d2);

        Op p1 = op(pw(d1));
        for (const auto& e : probes) ad.record(commutator(p1, e) == ad_power(o1, e, p), witness);

        Op lie = sum_lie(o1, o2);
        add.record(pw(d1 + d2) == pw(d1) + pw(d2) + to_first_order(lie), witness);

        FirstOrder fd = d1.scaled(f);
        scale.record(pw(fd) == pw(d1).scaled(f.pow(p)) + d1.scaled(delta(fd).iterate(f, p - 1)), witness);

        fun.record(pw(FirstOrder::of_function(f, m)) == FirstOrder::of_function(f.pow(p), m), witness);

        jac.record(op_pow(o1 + o2, p) == op_pow(o1, p) + op_pow(o2, p) + lie, witness);

        Op deligne_rhs = op_pow(o1, p).scaled(f.pow(p)) - o1.scaled(f * delta(d1).iterate(f.pow(p - 1), p - 1));
        del.record(op_pow(op(fd), p) == deligne_rhs, witness);

        auto s = lie_polynomials(o1, Op::function(alg, f));
        bool ok0 = true;
        for (std::uint32_t k = 0; k + 1 < s.size(); ++k) ok0 = ok0 && s[k].is_zero();
        ok0 = ok0 && s.back() == Op::function(alg, delta(d1).iterate(f, p - 1));
        ord0.record(ok0, witness);

        // functions f1 = f, f2 = g on H-parts D1, D2
        FirstOrder h1 = d1.symbol_part(), h2 = d2.symbol_part();
        FirstOrder l1 = h1 + FirstOrder::of_function(f, m), l2 = h2 + FirstOrder::of_function(g, m);
        Op lhs = Op::function(alg, delta(h1).iterate(f, p - 1) + delta(h2).iterate(g, p - 1)) + sum_lie(op(l1), op(l2));
        Op rhs = sum_lie(op(h1), op(h2)) + Op::function(alg, delta(h1 + h2).iterate(f + g, p - 1));
        ind.record(lhs == rhs, witness);

        Derivation dg = delta(h1.scaled(g));
        itd.record(dg.iterate(g * f, p - 1) == g.pow(p) * delta(h1).iterate(f, p - 1) + dg.iterate(g, p - 1) * f,
                   witness);
    }
    for (auto* b : {&ad, &add, &scale, &fun, &jac, &del, &ord0, &ind, &itd}) report.checks.push_back(b->finish());
    return report;
}

ValidationReport check_round_trip(const AlgebroidPtr& alg) {
    ValidationReport report;
    report.title = "round trip through the enveloping algebra";
    const RingPtr& ring = alg->ring();
    const std::size_t m = alg->rank();

    CheckBuilder br("bracket", "round-trip");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            Op c = commutator(Op::generator(alg, a), Op::generator(alg, b));
            bool ok = c.degree() <= 1 && symbol_top(c) == symbol_of(alg, FirstOrder::of_components(ring, alg->bracket(a, b))) &&
                      to_first_order(c).function.is_zero();
            br.record(ok, [&] { return "[" + alg->generator_name(a) + "," + alg->generator_name(b) + "] = " + c.to_string(); });
        }
    report.checks.push_back(br.finish());

    CheckBuilder an("anchor", "round-trip");
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t j = 0; j < ring->num_coordinates(); ++j) {
            Op c = commutator(Op::generator(alg, a), Op::function(alg, Poly::variable(ring, ring->coordinates()[j])));
            an.record(c == Op::function(alg, alg->anchor(a).component(j)),
                      [&] { return "[" + alg->generator_name(a) + ", x_" + std::to_string(j) + "] = " + c.to_string(); });
        }
    report.checks.push_back(an.finish());

    CheckBuilder pp("p-operation", "round-trip");
    for (std::size_t a = 0; a < m; ++a) {
        FirstOrder v = restricted_power(alg, FirstOrder::generator(ring, m, a));
        pp.record(symbol_of(alg, v) == symbol_of(alg, alg->p_op(a)) && v.function == alg->p_op(a).function,
                  [&] { return alg->generator_name(a) + "^[p] = " + to_string(v, *alg); });
    }
    report.checks.push_back(pp.finish());
    return report;
}

}  // namespace pcurv
