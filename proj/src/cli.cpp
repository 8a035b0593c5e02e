#include "pcurv/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pcurv/errors.hpp"
#include "pcurv/hitchin.hpp"
#include "pcurv/operator.hpp"

namespace pcurv {

using ojson = nlohmann::ordered_json;

bool Report::checks_passed() const noexcept {
    return std::all_of(sections.begin(), sections.end(), [](const auto& s) { return s.passed(); });
}

namespace {

class Timer {
public:
    explicit Timer(Report& report) : report_(report) {}

    template <class F>
    auto operator()(const std::string& stage, F&& f) {
        auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            stop(stage, start);
        } else {
            auto value = f();
            stop(stage, start);
            return value;
        }
    }

private:
    void stop(const std::string& stage, std::chrono::steady_clock::time_point start) {
        std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
        report_.timings_ms.emplace_back(stage, ms.count());
    }

    Report& report_;
};

PanelOptions panel_of(const RunOptions& options) {
    PanelOptions panel;
    panel.degree = options.degree_panel;
    panel.trials = options.trials;
    panel.seed = options.seed;
    return panel;
}

ValidationReport single_check(const std::string& title, CheckResult check) {
    ValidationReport r;
    r.title = title;
    r.checks.push_back(std::move(check));
    return r;
}

CheckResult failed_check(const std::string& name, const std::string& section, const std::string& witness) {
    CheckResult c;
    c.name = name;
    c.section = section;
    c.status = CheckStatus::Fail;
    c.cases = 1;
    c.witness = witness;
    return c;
}

ojson matrix_json(const PolyMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

std::string dual_name(const HitchinInvariants& inv, std::size_t a) {
    return inv.ring->variable(inv.duals[a]).name;
}

std::vector<std::string> dual_names(const HitchinInvariants& inv) {
    std::vector<std::string> out;
    for (std::size_t a = 0; a < inv.duals.size(); ++a) out.push_back(dual_name(inv, a));
    return out;
}

ojson invariants_json(const HitchinInvariants& inv) {
    ojson out = ojson::array();
    for (std::size_t k = 1; k <= inv.rank; ++k) out.push_back({{"k", k}, {"value", inv.e(k).to_string()}});
    return out;
}

std::string offending_string(const DescentEntry& e) {
    return Poly::from_terms(e.original.ring(), e.witness.offending).to_string();
}

ojson descent_json(const DescentReport& d) {
    ojson out = ojson::array();
    for (const auto& e : d.entries) {
        ojson entry;
        entry["k"] = e.k;
        entry["y"] = y_monomial_string(e.y_monomial, d.dual_names);
        entry["original"] = e.original.to_string();
        if (e.descended)
            entry["descended"] = e.descended->to_string();
        else
            entry["offending"] = offending_string(e);
        out.push_back(entry);
    }
    return out;
}

std::string entry_label(const DescentEntry& e, const DescentReport& d) {
    return "e_" + std::to_string(e.k) + " [" + y_monomial_string(e.y_monomial, d.dual_names) + "]";
}

/// Failure of the descent theorem, plus the scenario's declared expectation.
ValidationReport descent_section(const DescentReport& d, Expectation expect) {
    ValidationReport r;
    r.title = "descent";
    CheckBuilder theorem("descent-theorem", "descent");
    for (const auto& e : d.entries)
        theorem.record(e.descended || !d.generically_surjective,
                       [&] { return entry_label(e, d) + " has offending terms " + offending_string(e); });
    if (!d.generically_surjective) theorem.note("anchor not generically surjective; descent is not guaranteed");
    r.checks.push_back(theorem.finish());
    if (expect != Expectation::None) {
        CheckBuilder ex("expectation", "descent");
        if (expect == Expectation::Descends) {
            const DescentEntry* f = d.first_failure();
            ex.record(f == nullptr, [&] { return "expected descent, but " + entry_label(*f, d) + " does not descend"; });
        } else {
            ex.record(!d.all_descended(), [] { return std::string("expected a non-descendable coefficient, all descend"); });
        }
        ex.note(std::string("expect ") + to_string(expect));
        r.checks.push_back(ex.finish());
    }
    return r;
}

const ModulePtr& require_module(const Scenario& s) {
    if (!s.module) throw InputError(s.source + ": scenario has no module");
    return s.module;
}

void require_odd(const Scenario& s, const std::string& command) {
    if (s.p == 2) throw InputError(s.source + ": " + command + " needs p > 2");
}

/// Flatness section, then the p-curvature unless the module is curved and
/// curved modules were not allowed.
std::optional<PCurvature> curvature(const ModulePtr& module, Report& r, const RunOptions& o, Timer& timer,
                                    const std::string& label = "") {
    ValidationReport flat = timer(label + "flatness", [&] { return validate_flatness(*module); });
    if (!label.empty()) flat.title = label + flat.title;
    r.sections.push_back(flat);
    if (!flat.passed()) {
        if (!o.allow_nonflat) {
            r.warnings.push_back("module is not flat; rerun with --allow-nonflat to compute psi anyway");
            return std::nullopt;
        }
        r.warnings.push_back("module is not flat; psi computed without the flatness guarantee");
    }
    return timer(label + "p-curvature", [&] { return p_curvature(module, o.allow_nonflat); });
}

ojson psi_json(const PCurvature& c) {
    ojson out = ojson::array();
    const auto& alg = *c.module->algebroid();
    for (std::size_t a = 0; a < c.psi.size(); ++a)
        out.push_back({{"generator", alg.generator_name(a)}, {"matrix", matrix_json(c.psi[a])}});
    return out;
}

void run_validate(const Scenario& s, Report& r, const RunOptions& o, Timer& timer) {
    const PanelOptions panel = panel_of(o);
    ValidationReport axioms = timer("algebroid", [&] { return validate_algebroid(s.algebroid, panel); });
    r.sections.push_back(axioms);
    SurjectivityResult surj = anchor_generic_surjectivity(*s.algebroid);
    r.results["generically_surjective"] = surj.generically_surjective;
    r.results["surjectivity_minor"] = surj.minor.to_string();
    if (!axioms.passed()) {
        r.warnings.push_back("algebroid axioms fail; p-structure and enveloping checks skipped");
        return;
    }
    r.sections.push_back(timer("p-structure", [&] { return validate_p_structure(s.algebroid, panel); }));
    r.sections.push_back(timer("enveloping", [&] { return check_enveloping_p_structure(s.algebroid, panel); }));
    r.sections.push_back(timer("round-trip", [&] { return check_round_trip(s.algebroid); }));
    if (s.module) r.sections.push_back(timer("flatness", [&] { return validate_flatness(*s.module); }));
}

void run_pcurvature(const Scenario& s, Report& r, const RunOptions& o, Timer& timer) {
    auto c = curvature(require_module(s), r, o, timer);
    if (!c) return;
    r.results["psi"] = psi_json(*c);
    r.sections.push_back(timer("iota-equivalence", [&] { return check_iota_equivalence(*c); }));
    r.sections.push_back(timer("p-linearity", [&] { return check_p_linearity(*c, panel_of(o)); }));
    r.sections.push_back(timer("commutativity", [&] { return check_higgs_commutativity(*c); }));
    r.sections.push_back(timer("flat-commutation", [&] { return check_flat_commutation(*c); }));
}

void run_hitchin(const Scenario& s, Report& r, const RunOptions& o, Timer& timer) {
    auto c = curvature(require_module(s), r, o, timer);
    if (!c) return;
    ValidationReport comm = check_higgs_commutativity(*c);
    r.sections.push_back(comm);
    if (!comm.passed()) return;
    CharacteristicPolynomial chi = timer("char-poly", [&] { return universal_char_poly(*c); });
    HitchinInvariants inv = hitchin_invariants(chi, c->module->rank());
    r.results["duals"] = dual_names(inv);
    r.results["char_poly"] = chi.value.to_string();
    r.results["invariants"] = invariants_json(inv);
    if (s.p == 2)
        r.warnings.push_back("p = 2: trace-flatness checks skipped");
    else
        r.sections.push_back(timer("trace-flatness", [&] { return trace_flatness_check(*c); }));
}

struct Descended {
    HitchinInvariants invariants;
    DescentReport descent;
};

std::optional<Descended> descend_module(const ModulePtr& module, Report& r, const RunOptions& o, Timer& timer,
                                        const std::string& stage, const std::string& label = "") {
    auto c = curvature(module, r, o, timer, label);
    if (!c) return std::nullopt;
    return timer(stage, [&] {
        HitchinInvariants inv = hitchin_invariants(*c);
        DescentReport d = descend_invariants(inv, *module->algebroid());
        return Descended{inv, d};
    });
}

void run_descend(const Scenario& s, Report& r, const RunOptions& o, Timer& timer) {
    require_odd(s, "descend");
    auto d = descend_module(require_module(s), r, o, timer, "descent");
    if (!d) return;
    r.results["generically_surjective"] = d->descent.generically_surjective;
    r.results["surjectivity_minor"] = d->descent.surjectivity_minor.to_string();
    r.results["coefficients"] = descent_json(d->descent);
    r.sections.push_back(descent_section(d->descent, s.expect));
}

const DescentEntry* find_entry(const DescentReport& d, const DescentEntry& like) {
    for (const auto& e : d.entries)
        if (e.k == like.k && e.y_monomial == like.y_monomial) return &e;
    return nullptr;
}

void run_rees(const Scenario& s, Report& r, const RunOptions& o, Timer& timer) {
    require_odd(s, "rees");
    require_module(s);
    AlgebroidPtr family_alg = s.rees ? s.algebroid : rees_algebroid(*s.algebroid);
    ModulePtr family = s.rees ? s.module : rees_module(*s.module, family_alg);
    const std::size_t t = *family_alg->ring()->rees_index();

    auto fam = descend_module(family, r, o, timer, "family-descent", "family: ");
    if (!fam) return;
    r.sections.push_back(descent_section(fam->descent, s.expect));
    r.results["t"] = family_alg->ring()->variable(t).name;
    r.results["family"] = descent_json(fam->descent);

    ojson fibres = ojson::array();
    for (Coeff value : {Coeff{1}, Coeff{0}}) {
        const std::string label = "t=" + std::to_string(value);
        ModulePtr fibre = specialize_t(*family, value);
        auto fd = descend_module(fibre, r, o, timer, "fibre " + label, "fibre " + label + ": ");
        if (!fd) continue;
        fibres.push_back({{"t", value}, {"coefficients", descent_json(fd->descent)}});
        CheckBuilder match("specialization " + label, "rees");
        for (const auto& e : fam->descent.entries) {
            const DescentEntry* f = find_entry(fd->descent, e);
            const std::string want = e.original.specialize(t, value).to_string();
            match.record(f && f->original.to_string() == want,
                         [&] { return entry_label(e, fam->descent) + " at " + label + ": expected " + want; });
            if (!e.descended) continue;
            const std::string root = e.descended->specialize(t, value).to_string();
            match.record(f && f->descended && f->descended->to_string() == root, [&] {
                return entry_label(e, fam->descent) + " at " + label + ": family descends to " + root;
            });
        }
        r.sections.push_back(single_check("fibre " + label, match.finish()));
    }
    r.results["fibres"] = fibres;
}

}  // namespace

Report run_scenario(const Scenario& s, const std::string& command, const RunOptions& o) {
    Report r;
    r.command = command;
    r.scenario = s.name;
    r.description = s.description;
    r.inputs["p"] = s.p;
    r.inputs["coordinates"] = s.coordinates;
    r.inputs["rees"] = s.rees;
    r.inputs["rank"] = s.algebroid->rank();
    if (s.module) r.inputs["module_rank"] = s.module->rank();
    r.inputs["seed"] = o.seed;
    r.inputs["trials"] = o.trials;
    r.inputs["degree_panel"] = o.degree_panel;
    if (s.expect != Expectation::None) r.inputs["expect"] = to_string(s.expect);

    Timer timer(r);
    try {
        if (command == "validate")
            run_validate(s, r, o, timer);
        else if (command == "pcurvature")
            run_pcurvature(s, r, o, timer);
        else if (command == "hitchin")
            run_hitchin(s, r, o, timer);
        else if (command == "descend")
            run_descend(s, r, o, timer);
        else if (command == "rees")
            run_rees(s, r, o, timer);
        else
            throw InputError("unknown command '" + command + "'");
    } catch (const MathError& e) {
        r.sections.push_back(single_check("error", failed_check("math", "error", e.what())));
    } catch (const ResourceError& e) {
        r.sections.push_back(single_check("error", failed_check("resource", "error", e.what())));
    }
    r.exit_code = r.checks_passed() && !r.sections.empty() ? 0 : 1;
    return r;
}

ojson report_json(const Report& r, bool timings) {
    ojson out;
    out["command"] = r.command;
    out["scenario"] = r.scenario;
    if (!r.description.empty()) out["description"] = r.description;
    out["status"] = r.exit_code == 0 ? "pass" : "fail";
    out["exit_code"] = r.exit_code;
    out["inputs"] = r.inputs;
    ojson sections = ojson::array();
    for (const auto& s : r.sections) {
        ojson checks = ojson::array();
        for (const auto& c : s.checks) {
            ojson cj;
            cj["name"] = c.name;
            cj["section"] = c.section;
            cj["status"] = to_string(c.status);
            cj["cases"] = c.cases;
            if (!c.witness.empty()) cj["witness"] = c.witness;
            if (!c.note.empty()) cj["note"] = c.note;
            checks.push_back(cj);
        }
        sections.push_back({{"title", s.title}, {"passed", s.passed()}, {"checks", checks}});
    }
    out["sections"] = sections;
    out["results"] = r.results;
    out["warnings"] = r.warnings;
    if (timings) {
        ojson t = ojson::object();
        for (const auto& [stage, ms] : r.timings_ms) t[stage] = ms;
        out["timings_ms"] = t;
    }
    return out;
}

namespace {

template <class F>
Report timed_total(F&& run) {
    auto start = std::chrono::steady_clock::now();
    Report r = run();
    std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    r.timings_ms.emplace_back("total", ms.count());
    return r;
}

int overall_exit(const std::vector<Report>& reports) {
    int code = 0;
    for (const auto& r : reports) code = std::max(code, r.exit_code);
    return code;
}

void text_value(std::ostream& os, const std::string& indent, const std::string& key, const ojson& v) {
    if (v.is_string()) {
        os << indent << key << ": " << v.get<std::string>() << '\n';
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
        os << indent << key << ":\n";
        for (const auto& item : v) {
            std::string line;
            for (const auto& [k, x] : item.items()) {
                if (!line.empty()) line += ", ";
                line += k + " = " + (x.is_string() ? x.get<std::string>() : x.dump());
            }
            os << indent << "  - " << line << '\n';
        }
    } else {
        os << indent << key << ": " << v.dump() << '\n';
    }
}

void text_report(std::ostream& os, const Report& r, bool timings) {
    os << "== " << r.command << ": " << r.scenario;
    if (r.inputs.contains("p")) os << " (p = " << r.inputs["p"].dump() << ")";
    os << " ==\n";
    if (!r.description.empty()) os << r.description << '\n';
    std::size_t total = 0, failed = 0;
    for (const auto& s : r.sections)
        for (const auto& c : s.checks) {
            ++total;
            failed += c.ok() ? 0 : 1;
        }
    os << "status: " << (r.exit_code == 0 ? "pass" : "fail") << " (" << total << " checks, " << failed
       << " failed)\n";
    for (const auto& s : r.sections) {
        os << "  " << s.title << '\n';
        for (const auto& c : s.checks) {
            std::string status = to_string(c.status);
            status.resize(std::max<std::size_t>(status.size(), 10), ' ');
            os << "    [" << status << "] " << c.name << " (" << c.cases << " cases)";
            if (!c.note.empty()) os << "  " << c.note;
            os << '\n';
            if (!c.witness.empty()) os << "        witness: " << c.witness << '\n';
        }
    }
    if (!r.results.empty()) {
        os << "results:\n";
        for (const auto& [key, value] : r.results.items()) text_value(os, "  ", key, value);
    }
    for (const auto& w : r.warnings) os << "warning: " << w << '\n';
    if (timings)
        for (const auto& [stage, ms] : r.timings_ms) os << "time " << stage << ": " << ms << " ms\n";
}

}  // namespace

std::string emit_report(const std::vector<Report>& reports, Format format, bool timings) {
    std::ostringstream os;
    if (format == Format::Json) {
        ojson doc;
        doc["schema_version"] = 1;
        doc["exit_code"] = overall_exit(reports);
        doc["reports"] = ojson::array();
        for (const auto& r : reports) doc["reports"].push_back(report_json(r, timings));
        os << doc.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i > 0) os << '\n';
            text_report(os, reports[i], timings);
        }
    }
    return os.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-curvature and Hitchin invariants of Lie algebroid modules in characteristic p", "pcurv"};
    app.require_subcommand(0, 1);

    RunOptions options;
    std::string format = "text";
    bool timings = false;
    std::vector<std::string> files;
    std::uint64_t p = 0;
    std::size_t coords = 1;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", options.seed, "seed for the random panels")->capture_default_str();
        sub->add_option("--trials", options.trials, "random trials per panel check")->capture_default_str();
        sub->add_option("--degree-panel", options.degree_panel, "degree of the monomial panel")->capture_default_str();
        sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--timings", timings, "include stage timings in the output");
    };

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "check algebroid, p-structure and module axioms"},
        {"pcurvature", "compute the p-curvature psi_a of the module"},
        {"hitchin", "characteristic polynomial and Hitchin invariants"},
        {"descend", "Frobenius descent of the Hitchin invariants"},
        {"rees", "Rees family, descent and its fibres at t = 1 and t = 0"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("scenarios", files, "scenario JSON files");
        common(sub);
        sub->add_flag("--allow-nonflat", options.allow_nonflat, "compute psi for curved modules");
        subs[name] = sub;
    }
    CLI::App* ident = app.add_subcommand("identities", "run the identity and iota suites over the tangent algebroid");
    ident->add_option("--p", p, "characteristic")->required();
    ident->add_option("--coords", coords, "number of coordinates")->capture_default_str()->check(CLI::Range(1, 6));
    common(ident);

    if (argc <= 1) {
        err << app.help();
        return 2;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    const Format fmt = format == "json" ? Format::Json : Format::Text;

    try {
        std::vector<Report> reports;
        if (ident->parsed()) {
            PrimeField{p};  // rejects composite characteristics
            reports.push_back(timed_total([&] { return identity_suite(p, coords, options); }));
            reports.push_back(timed_total([&] { return iota_suite(p, coords, options); }));
        } else {
            std::string command;
            for (const auto& [name, sub] : subs)
                if (sub->parsed()) command = name;
            if (command.empty()) {
                err << app.help();
                return 2;
            }
            if (files.empty()) {
                err << subs[command]->help();
                return 2;
            }
            for (const auto& file : files) {
                try {
                    Scenario s = load_scenario(file);
                    reports.push_back(timed_total([&] { return run_scenario(s, command, options); }));
                } catch (const MathError& e) {
                    Report r;
                    r.command = command;
                    r.scenario = std::filesystem::path(file).stem().string();
                    r.sections.push_back(single_check("load", failed_check("scenario", "load", e.what())));
                    r.exit_code = 1;
                    reports.push_back(std::move(r));
                }
            }
            std::stable_sort(reports.begin(), reports.end(),
                             [](const Report& a, const Report& b) { return a.scenario < b.scenario; });
        }
        out << emit_report(reports, fmt, timings);
        return overall_exit(reports);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pcurv
