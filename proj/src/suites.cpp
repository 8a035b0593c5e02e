#include "pcurv/cli.hpp"
#include "pcurv/operator.hpp"
#include "pcurv/random.hpp"

namespace pcurv {

namespace {

RingPtr suite_ring(std::uint64_t p, std::size_t n) {
    static const char* names[] = {"x", "y", "z"};
    std::vector<std::string> coords;
    for (std::size_t j = 0; j < n; ++j) coords.push_back(n <= 3 ? names[j] : "x" + std::to_string(j + 1));
    return PolyRing::make(p, coords);
}

PanelOptions panel_of(const RunOptions& options) {
    PanelOptions panel;
    panel.degree = options.degree_panel;
    panel.trials = options.trials;
    panel.seed = options.seed;
    return panel;
}

void suite_inputs(Report& report, std::uint64_t p, std::size_t n, const RunOptions& options) {
    report.inputs["p"] = p;
    report.inputs["coordinates"] = n;
    report.inputs["seed"] = options.seed;
    report.inputs["trials"] = options.trials;
    report.inputs["degree_panel"] = options.degree_panel;
}

void finish(Report& report) { report.exit_code = report.checks_passed() ? 0 : 1; }

}  // namespace

Report identity_suite(std::uint64_t p, std::size_t n, const RunOptions& options) {
    Report report;
    report.command = "identities";
    report.scenario = "tangent-p" + std::to_string(p) + "-n" + std::to_string(n);
    suite_inputs(report, p, n, options);
    RingPtr ring = suite_ring(p, n);
    AlgebroidPtr alg = tangent_algebroid(ring);
    const std::uint32_t q = static_cast<std::uint32_t>(p);

    ValidationReport envelope = check_enveloping_p_structure(alg, panel_of(options));

    // (f nu)^p = f^p nu^p + (f nu)^(p-1)(f) nu for derivations, and
    // delta_{fD}^(p-1)(f) = -f delta_D^(p-1)(f^(p-1)) for D in H
    ValidationReport identities;
    identities.title = "identities";
    CheckBuilder hoch("hochschild", "identities", true);
    CheckBuilder katz("katz-tangent", "identities", true);
    Rng rng(options.seed ^ 0x5bd1e995u);
    PolyShape shape;
    shape.max_degree = options.degree_panel;
    for (std::size_t i = 0; i < options.trials; ++i) {
        std::vector<Poly> comps;
        for (std::size_t j = 0; j < n; ++j) comps.push_back(random_poly(ring, rng, shape));
        Derivation nu(ring, comps);
        Poly f = random_poly(ring, rng, shape);
        Derivation fnu = nu.scaled(f);
        Derivation rhs = derivation_pth_power(nu).scaled(f.pow(q)) + nu.scaled(fnu.iterate(f, q - 1));
        hoch.record(derivation_pth_power(fnu) == rhs,
                    [&] { return "nu = " + nu.to_string() + ", f = " + f.to_string(); });
        Poly left = fnu.iterate(f, q - 1);
        Poly right = -(f * nu.iterate(f.pow(q - 1), q - 1));
        katz.record(left == right, [&] { return "nu = " + nu.to_string() + ", f = " + f.to_string(); });
    }
    identities.checks.push_back(hoch.finish());

    if (p == 2) {
        report.warnings.push_back("p = 2: only the Hochschild and Deligne identities are checked");
        if (const auto* d = envelope.find("deligne")) identities.checks.push_back(*d);
        report.sections.push_back(identities);
    } else {
        identities.checks.push_back(katz.finish());
        for (const char* name : {"jacobson", "deligne", "extension-order0", "induced-additivity", "iterated-delta"})
            if (const auto* c = envelope.find(name)) identities.checks.push_back(*c);
        report.sections.push_back(identities);
        ValidationReport axioms;
        axioms.title = "enveloping algebra p-structure";
        for (const auto& c : envelope.checks)
            if (c.section == "enveloping") axioms.checks.push_back(c);
        report.sections.push_back(axioms);
    }
    finish(report);
    return report;
}

Report iota_suite(std::uint64_t p, std::size_t n, const RunOptions& options) {
    Report report;
    report.command = "iota";
    report.scenario = "tangent-p" + std::to_string(p) + "-n" + std::to_string(n);
    suite_inputs(report, p, n, options);
    RingPtr ring = suite_ring(p, n);
    AlgebroidPtr alg = tangent_algebroid(ring);
    using Op = OperatorElement;

    ValidationReport section;
    section.title = "iota";
    CheckBuilder central("iota-central", "iota", true);
    CheckBuilder additive("iota-additive", "iota", true);
    CheckBuilder scaling("iota-scaling", "iota", true);
    CheckBuilder functions("iota-functions", "iota", true);
    CheckBuilder symbol("iota-symbol", "iota", true);
    Rng rng(options.seed ^ 0x9e3779b9u);
    PolyShape shape;
    shape.max_degree = options.degree_panel;
    for (std::size_t i = 0; i < options.trials; ++i) {
        FirstOrder d1 = random_first_order(alg, rng, options.degree_panel);
        FirstOrder d2 = random_first_order(alg, rng, options.degree_panel);
        Poly f = random_poly(ring, rng, shape);
        auto witness = [&] {
            return "D1 = " + to_string(d1, *alg) + ", D2 = " + to_string(d2, *alg) + ", f = " + f.to_string();
        };
        Op i1 = iota(Op::from_first_order(alg, d1), false);
        Op i2 = iota(Op::from_first_order(alg, d2), false);
        central.record(is_central(i1), witness);
        additive.record(iota(Op::from_first_order(alg, d1 + d2), false) == i1 + i2, witness);
        scaling.record(iota(Op::from_first_order(alg, d1.scaled(f)), false) == i1.scaled(f.pow(p)), witness);
        functions.record(iota(Op::function(alg, f), false).is_zero(), witness);
        FirstOrder h = d1.symbol_part();
        SymbolElement top = symbol_top(iota(Op::from_first_order(alg, h), false));
        SymbolElement expected = symbol_of(alg, h).pow(p);
        symbol.record(h.is_zero() ? top.is_zero() : top == expected, witness);
    }
    for (auto* b : {&central, &additive, &scaling, &functions, &symbol}) section.checks.push_back(b->finish());
    report.sections.push_back(section);
    finish(report);
    return report;
}

}  // namespace pcurv
