#include "pcurv/scenario.hpp"

#include <fstream>
#include <set>

#include "pcurv/errors.hpp"
#include "pcurv/parse.hpp"

namespace pcurv {

namespace {

using nlohmann::json;

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        throw InputError(source_ + ": " + path + ": " + message);
    }

    [[noreturn]] void fail_dim(const std::string& path, const std::string& message) const {
        throw DimensionError(source_ + ": " + path + ": " + message);
    }

    const json& array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) const {
        if (!j.is_array()) fail(path, "expected an array");
        if (size && j.size() != *size)
            fail_dim(path, "expected " + std::to_string(*size) + " entries, found " + std::to_string(j.size()));
        return j;
    }

    Poly poly(const json& j, const RingPtr& ring, const std::string& path) const {
        std::string text;
        if (j.is_string())
            text = j.get<std::string>();
        else if (j.is_number_integer())
            text = std::to_string(j.get<std::int64_t>());
        else
            fail(path, "expected a polynomial string");
        try {
            return parse_poly(text, ring);
        } catch (const ParseError& e) {
            throw ParseError(source_ + ": " + path + ": \"" + text + "\": " + e.what(), e.position());
        } catch (const Error& e) {
            fail(path, "\"" + text + "\": " + e.what());
        }
    }

    std::vector<Poly> poly_list(const json& j, const RingPtr& ring, const std::string& path, std::size_t size) const {
        array(j, path, size);
        std::vector<Poly> out;
        for (std::size_t i = 0; i < size; ++i) out.push_back(poly(j[i], ring, path + "[" + std::to_string(i) + "]"));
        return out;
    }

    PolyMatrix matrix(const json& j, const RingPtr& ring, const std::string& path, std::size_t rank) const {
        array(j, path, rank);
        PolyMatrix m(ring, rank, rank);
        for (std::size_t i = 0; i < rank; ++i) {
            auto row = poly_list(j[i], ring, path + "[" + std::to_string(i) + "]", rank);
            for (std::size_t k = 0; k < rank; ++k) m(i, k) = std::move(row[k]);
        }
        return m;
    }

    /// A string (function part only), an array (H-part) or {function, components}.
    FirstOrder first_order(const json& j, const RingPtr& ring, const std::string& path, std::size_t m) const {
        if (j.is_string() || j.is_number_integer()) return FirstOrder::of_function(poly(j, ring, path), m);
        if (j.is_array()) return FirstOrder::of_components(ring, poly_list(j, ring, path, m));
        if (!j.is_object()) fail(path, "expected a string, an array or an object");
        check_keys(j, path, {"function", "components"});
        FirstOrder d = FirstOrder::zero(ring, m);
        if (j.contains("function")) d.function = poly(j["function"], ring, path + ".function");
        if (j.contains("components")) d.components = poly_list(j["components"], ring, path + ".components", m);
        return d;
    }

    std::size_t count(const json& j, const std::string& path) const {
        if (!j.is_number_integer() || j.get<std::int64_t>() <= 0) fail(path, "expected a positive integer");
        return j.get<std::size_t>();
    }

    void check_keys(const json& j, const std::string& path, std::set<std::string> allowed) const {
        for (const auto& [key, value] : j.items())
            if (!allowed.count(key)) fail(path, "unknown key \"" + key + "\"");
    }

private:
    std::string source_;
};

AlgebroidPtr read_algebroid(const Reader& in, const json& j, const RingPtr& ring) {
    const std::string path = "algebroid";
    if (!j.is_object()) in.fail(path, "expected an object");
    if (j.contains("preset")) {
        std::string preset = j["preset"].is_string() ? j["preset"].get<std::string>() : "";
        if (preset == "tangent") {
            in.check_keys(j, path, {"preset"});
            return tangent_algebroid(ring);
        }
        if (preset == "higgs") {
            in.check_keys(j, path, {"preset", "rank", "alpha"});
            std::size_t m = j.contains("rank") ? in.count(j["rank"], path + ".rank") : 1;
            PolyMatrix alpha = j.contains("alpha") ? in.matrix(j["alpha"], ring, path + ".alpha", m) : PolyMatrix(ring, m, m);
            return higgs_algebroid(ring, m, alpha);
        }
        in.fail(path + ".preset", "expected \"tangent\" or \"higgs\"");
    }
    in.check_keys(j, path, {"rank", "generators", "bracket", "anchor", "p_op"});
    if (!j.contains("rank")) in.fail(path, "missing \"rank\"");
    const std::size_t m = in.count(j["rank"], path + ".rank");
    const std::size_t n = ring->num_coordinates();

    std::vector<std::string> names;
    if (j.contains("generators")) {
        in.array(j["generators"], path + ".generators", m);
        for (const auto& g : j["generators"]) {
            if (!g.is_string()) in.fail(path + ".generators", "expected strings");
            names.push_back(g.get<std::string>());
        }
    }
    AlgebroidPresentation::BracketTable bracket(m, std::vector<std::vector<Poly>>(m, std::vector<Poly>(m, Poly(ring))));
    if (j.contains("bracket")) {
        in.array(j["bracket"], path + ".bracket", m);
        for (std::size_t a = 0; a < m; ++a) {
            std::string row = path + ".bracket[" + std::to_string(a) + "]";
            in.array(j["bracket"][a], row, m);
            for (std::size_t b = 0; b < m; ++b)
                bracket[a][b] = in.poly_list(j["bracket"][a][b], ring, row + "[" + std::to_string(b) + "]", m);
        }
    }
    std::vector<Derivation> anchor(m, Derivation(ring));
    if (j.contains("anchor")) {
        in.array(j["anchor"], path + ".anchor", m);
        for (std::size_t a = 0; a < m; ++a)
            anchor[a] = Derivation(ring, in.poly_list(j["anchor"][a], ring, path + ".anchor[" + std::to_string(a) + "]", n));
    }
    std::vector<FirstOrder> p_op(m, FirstOrder::zero(ring, m));
    if (j.contains("p_op")) {
        in.array(j["p_op"], path + ".p_op", m);
        for (std::size_t a = 0; a < m; ++a)
            p_op[a] = in.first_order(j["p_op"][a], ring, path + ".p_op[" + std::to_string(a) + "]", m);
    }
    return std::make_shared<const AlgebroidPresentation>(ring, m, std::move(bracket), std::move(anchor),
                                                         std::move(p_op), std::move(names));
}

ModulePtr read_module(const Reader& in, const json& j, const AlgebroidPtr& alg, const std::string& path,
                      std::optional<std::size_t> rank) {
    if (!j.is_object()) in.fail(path, "expected an object");
    in.check_keys(j, path, {"rank", "matrices"});
    std::size_t r = 0;
    if (j.contains("rank"))
        r = in.count(j["rank"], path + ".rank");
    else if (rank)
        r = *rank;
    else
        in.fail(path, "missing \"rank\"");
    if (rank && r != *rank) in.fail_dim(path + ".rank", "must match the base module rank");
    if (!j.contains("matrices")) in.fail(path, "missing \"matrices\"");
    in.array(j["matrices"], path + ".matrices", alg->rank());
    std::vector<PolyMatrix> mats;
    for (std::size_t a = 0; a < alg->rank(); ++a)
        mats.push_back(in.matrix(j["matrices"][a], alg->ring(), path + ".matrices[" + std::to_string(a) + "]", r));
    return std::make_shared<const LambdaModule>(alg, r, std::move(mats));
}

}  // namespace

const char* to_string(Expectation e) noexcept {
    switch (e) {
        case Expectation::None: return "none";
        case Expectation::Descends: return "descends";
        case Expectation::NotDescendable: return "not_descendable";
    }
    return "none";
}

Scenario parse_scenario(const json& doc, const std::string& source) {
    Reader in(source);
    if (!doc.is_object()) in.fail("$", "expected an object");
    in.check_keys(doc, "$", {"schema_version", "name", "description", "p", "coordinates", "rees", "algebroid", "shift",
                             "module", "rees_module", "expect"});
    if (!doc.contains("schema_version")) in.fail("$", "missing \"schema_version\"");
    if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kScenarioSchemaVersion)
        in.fail("schema_version", "unsupported version (expected " + std::to_string(kScenarioSchemaVersion) + ")");

    Scenario s;
    s.source = source;
    s.name = doc.value("name", source);
    s.description = doc.value("description", "");
    if (!doc.contains("p") || !doc["p"].is_number_integer() || doc["p"].get<std::int64_t>() <= 0)
        in.fail("p", "expected a prime");
    s.p = doc["p"].get<std::uint64_t>();
    if (!doc.contains("coordinates")) in.fail("$", "missing \"coordinates\"");
    in.array(doc["coordinates"], "coordinates");
    for (const auto& c : doc["coordinates"]) {
        if (!c.is_string()) in.fail("coordinates", "expected strings");
        s.coordinates.push_back(c.get<std::string>());
    }
    if (doc.contains("rees")) {
        if (!doc["rees"].is_boolean()) in.fail("rees", "expected true or false");
        s.rees = doc["rees"].get<bool>();
    }
    if (doc.contains("expect")) {
        std::string e = doc["expect"].is_string() ? doc["expect"].get<std::string>() : "";
        if (e == "descends")
            s.expect = Expectation::Descends;
        else if (e == "not_descendable")
            s.expect = Expectation::NotDescendable;
        else
            in.fail("expect", "expected \"descends\" or \"not_descendable\"");
    }

    RingPtr ring;
    try {
        ring = PolyRing::make(s.p, s.coordinates);
    } catch (const InputError& e) {
        in.fail("$", e.what());
    }
    if (!doc.contains("algebroid")) in.fail("$", "missing \"algebroid\"");
    AlgebroidPtr alg = read_algebroid(in, doc["algebroid"], ring);

    if (doc.contains("shift")) {
        in.array(doc["shift"], "shift", alg->rank());
        PStructureShift shift;
        for (std::size_t a = 0; a < alg->rank(); ++a)
            shift.phi.push_back(in.first_order(doc["shift"][a], ring, "shift[" + std::to_string(a) + "]", alg->rank()));
        alg = shift_p_structure(alg, shift);
    }
    s.base_algebroid = alg;
    if (doc.contains("module")) s.base_module = read_module(in, doc["module"], alg, "module", std::nullopt);

    s.algebroid = alg;
    s.module = s.base_module;
    if (s.rees) {
        s.algebroid = rees_algebroid(*alg);
        if (doc.contains("rees_module")) {
            std::optional<std::size_t> r;
            if (s.base_module) r = s.base_module->rank();
            s.module = read_module(in, doc["rees_module"], s.algebroid, "rees_module", r);
        } else if (s.base_module) {
            s.module = rees_module(*s.base_module, s.algebroid);
        }
    } else if (doc.contains("rees_module")) {
        in.fail("rees_module", "only allowed when \"rees\" is true");
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw InputError(path + ": cannot open file");
    json doc;
    try {
        doc = json::parse(file);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": invalid JSON: " + e.what(), e.byte);
    }
    return parse_scenario(doc, path);
}

}  // namespace pcurv
