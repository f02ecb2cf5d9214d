#pragma once

// JSON descriptors for algebras, module points and general cochains, and the
// JSON renderings of every report the tool emits.  Parsing is strict: unknown
// fields are rejected, shapes are validated, and rational entries are
// round-tripped as canonical "n" / "n/d" strings.

#include "mcmod/cochain.hpp"
#include "mcmod/derived.hpp"
#include "mcmod/fields.hpp"
#include "mcmod/graded_algebra.hpp"
#include "mcmod/hilbert.hpp"
#include "mcmod/stability.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcmod {

using Json = nlohmann::json;

namespace io_detail {

inline void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw std::invalid_argument(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (allowed.find(it.key()) == allowed.end())
            throw std::invalid_argument(where + ": unknown field \"" + it.key() + "\"");
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw std::invalid_argument(where + ": missing field \"" + key + "\"");
    return *it;
}

}  // namespace io_detail

// ---- scalars -------------------------------------------------------------------

inline BigRational parse_rational_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return BigRational(BigInt(s));
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        BigRational r(num);
        r /= BigRational(den);
        return r;
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

inline RationalField::Element parse_entry(const RationalField&, const Json& v) {
    if (v.is_number_integer()) return BigRational(v.get<long long>());
    if (v.is_string()) return parse_rational_string(v.get<std::string>());
    throw std::invalid_argument("matrix entry must be an integer or a rational string");
}

inline PrimeField::Element parse_entry(const PrimeField& k, const Json& v) {
    if (v.is_number_integer()) return k.from_long(v.get<long long>());
    if (v.is_string()) return reduce_rational(k, parse_rational_string(v.get<std::string>()));
    throw std::invalid_argument("matrix entry must be an integer or an integer string");
}

inline Json entry_to_json(const RationalField& k, const RationalField::Element& v) {
    return Json(k.str(v));
}

inline Json entry_to_json(const PrimeField&, const PrimeField::Element& v) {
    return Json(static_cast<long long>(v));
}

// ---- polynomial strings ----------------------------------------------------------

// Terms of the form [sign] [integer] ['*' name['^' exp]]... summed freely;
// e.g. "x^2 + 3*x*y - y^2".  Exponent vectors come back per term.
struct ParsedTerm {
    long long coeff = 1;
    std::vector<int> exponents;
};

inline std::vector<ParsedTerm> parse_polynomial(const std::string& text,
                                                const std::vector<std::string>& var_names) {
    std::vector<ParsedTerm> terms;
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos == text.size()) throw std::invalid_argument("empty polynomial");
    bool first = true;
    while (pos < text.size()) {
        long long sign = 1;
        skip_ws();
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' between terms in \"" + text + "\"");
        }
        first = false;
        skip_ws();
        ParsedTerm term;
        term.coeff = sign;
        term.exponents.assign(var_names.size(), 0);
        bool saw_factor = false;
        bool expect_factor = true;
        while (pos < text.size() && expect_factor) {
            skip_ws();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::size_t len = 0;
                term.coeff *= std::stoll(text.substr(pos), &len);
                pos += len;
            } else {
                std::size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                             text[pos] == '_'))
                    ++pos;
                if (start == pos)
                    throw std::invalid_argument("expected a variable or integer in \"" + text + "\"");
                const std::string name = text.substr(start, pos - start);
                std::size_t var = 0;
                while (var < var_names.size() && var_names[var] != name) ++var;
                if (var == var_names.size())
                    throw std::invalid_argument("unknown variable \"" + name + "\"");
                int exp = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip_ws();
                    std::size_t len = 0;
                    exp = std::stoi(text.substr(pos), &len);
                    if (exp <= 0) throw std::invalid_argument("exponents must be positive");
                    pos += len;
                }
                term.exponents[var] += exp;
            }
            saw_factor = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                expect_factor = true;
            } else {
                expect_factor = false;
            }
        }
        if (!saw_factor) throw std::invalid_argument("dangling sign in \"" + text + "\"");
        terms.push_back(std::move(term));
    }
    return terms;
}

// ---- algebra descriptor -----------------------------------------------------------

// {"schema": "mcmod/algebra/v1", "field": "Q" | "Fp:<p>", "degreeBound": D,
//  "vars": [{"name": "x", "degree": 1}, ...], "relations": ["x*z - y^2", ...]}
struct AlgebraFile {
    FieldSpec field;
    int degree_bound = 1;
    std::vector<std::string> var_names;
    std::vector<int> var_degrees;
    std::vector<std::string> relations;
};

inline AlgebraFile parse_algebra_file(const Json& j) {
    io_detail::check_keys(j, {"schema", "field", "degreeBound", "vars", "relations"}, "algebra");
    AlgebraFile out;
    if (j.contains("schema") && j["schema"] != "mcmod/algebra/v1")
        throw std::invalid_argument("algebra: unsupported schema " + j["schema"].dump());
    out.field = FieldSpec::parse(io_detail::require(j, "field", "algebra").get<std::string>());
    out.degree_bound = io_detail::require(j, "degreeBound", "algebra").get<int>();
    const auto& vars = io_detail::require(j, "vars", "algebra");
    if (!vars.is_array() || vars.empty()) throw std::invalid_argument("algebra: vars must be a nonempty array");
    for (const auto& v : vars) {
        io_detail::check_keys(v, {"name", "degree"}, "algebra.vars");
        out.var_names.push_back(io_detail::require(v, "name", "algebra.vars").get<std::string>());
        out.var_degrees.push_back(io_detail::require(v, "degree", "algebra.vars").get<int>());
    }
    if (j.contains("relations")) {
        if (!j["relations"].is_array()) throw std::invalid_argument("algebra: relations must be an array");
        for (const auto& r : j["relations"]) out.relations.push_back(r.get<std::string>());
    }
    return out;
}

// Instantiate the descriptor over a concrete field object.
template <class F>
GradedAlgebra<F> build_algebra(const AlgebraFile& file, const F& k) {
    auto base = polynomial_algebra<F>(k, file.var_names, file.var_degrees, file.degree_bound);
    if (file.relations.empty()) return base;

    // per-degree exponent-vector index, in the same degree-lex order the
    // polynomial algebra uses
    std::vector<std::map<std::vector<int>, int>> index(static_cast<std::size_t>(file.degree_bound) + 1);
    for (int d = 1; d <= file.degree_bound; ++d) {
        std::vector<std::vector<int>> monos;
        std::vector<int> cur(file.var_names.size(), 0);
        detail::enumerate_monomials(file.var_degrees, d, 0, cur, monos);
        int idx = 0;
        for (const auto& m : monos) index[static_cast<std::size_t>(d)][m] = idx++;
    }

    std::vector<HomogeneousElement<F>> rels;
    for (const auto& text : file.relations) {
        const auto terms = parse_polynomial(text, file.var_names);
        int degree = -1;
        for (const auto& t : terms) {
            int d = 0;
            for (std::size_t v = 0; v < t.exponents.size(); ++v)
                d += t.exponents[v] * file.var_degrees[v];
            if (degree == -1) degree = d;
            if (d != degree)
                throw std::domain_error("inhomogeneous relation: \"" + text + "\"");
        }
        if (degree < 1 || degree > file.degree_bound)
            throw std::domain_error("relation degree out of range in \"" + text + "\"");
        HomogeneousElement<F> rel;
        rel.degree = degree;
        rel.coords.assign(static_cast<std::size_t>(base.dim(degree)), k.zero());
        for (const auto& t : terms) {
            const int idx = index[static_cast<std::size_t>(degree)].at(t.exponents);
            rel.coords[static_cast<std::size_t>(idx)] =
                k.add(rel.coords[static_cast<std::size_t>(idx)], k.from_long(t.coeff));
        }
        rels.push_back(std::move(rel));
    }
    return quotient_algebra(base, rels);
}

// ---- cochain / module-point descriptor ----------------------------------------------

// {"schema": "mcmod/cochain/v1", "field": ..., "window": [p, q],
//  "dims": [alpha_p..alpha_q], "degree": n, "components": [
//    {"source": j, "composition": [d_1..d_n], "basis": [t_1..t_n],
//     "basisLabels": [...], "entries": [[row]...]} ]}
// Omitted components are zero; a module point is the degree-1 case.
template <class F>
Cochain<F> parse_cochain(const Json& j, const std::shared_ptr<const GradedAlgebra<F>>& alg) {
    io_detail::check_keys(j, {"schema", "field", "window", "dims", "degree", "components"}, "cochain");
    if (j.contains("schema") && j["schema"] != "mcmod/cochain/v1")
        throw std::invalid_argument("cochain: unsupported schema " + j["schema"].dump());
    const F& k = alg->field();
    if (j.contains("field") &&
        !(FieldSpec::parse(j["field"].get<std::string>()) == k.spec()))
        throw std::invalid_argument("cochain: field disagrees with the algebra file");

    const auto& window = io_detail::require(j, "window", "cochain");
    if (!window.is_array() || window.size() != 2) throw std::invalid_argument("cochain: window must be [p, q]");
    const int lo = window[0].get<int>(), hi = window[1].get<int>();
    const auto& dims_json = io_detail::require(j, "dims", "cochain");
    if (!dims_json.is_array() || static_cast<int>(dims_json.size()) != hi - lo + 1)
        throw std::invalid_argument("cochain: dims must list one entry per window degree");
    std::vector<int> d;
    for (const auto& v : dims_json) d.push_back(v.get<int>());
    DimensionVector dims(lo, d);
    const int degree = j.contains("degree") ? j["degree"].get<int>() : 1;

    Cochain<F> out(alg, dims, degree);
    if (!j.contains("components")) return out;
    if (!j["components"].is_array()) throw std::invalid_argument("cochain: components must be an array");
    for (const auto& comp : j["components"]) {
        io_detail::check_keys(comp, {"source", "composition", "basis", "basisLabels", "entries"},
                              "cochain.components");
        const int source = io_detail::require(comp, "source", "component").get<int>();
        std::vector<int> composition;
        for (const auto& v : io_detail::require(comp, "composition", "component")) composition.push_back(v.get<int>());
        if (static_cast<int>(composition.size()) != degree)
            throw std::invalid_argument("cochain: composition length must equal the degree");
        std::vector<int> basis;
        for (const auto& v : io_detail::require(comp, "basis", "component")) basis.push_back(v.get<int>());
        if (basis.size() != composition.size())
            throw std::invalid_argument("cochain: basis tuple length must equal the degree");

        auto& target = out.component(source, composition);  // throws if no such block
        std::size_t tuple = 0;
        for (std::size_t s = 0; s < composition.size(); ++s) {
            const int dim = alg->dim(composition[s]);
            if (basis[s] < 0 || basis[s] >= dim)
                throw std::invalid_argument("cochain: basis index out of range");
            if (comp.contains("basisLabels") &&
                comp["basisLabels"][s].get<std::string>() !=
                    alg->labels(composition[s])[static_cast<std::size_t>(basis[s])])
                throw std::invalid_argument("cochain: basis label does not match the algebra");
            tuple = tuple * static_cast<std::size_t>(dim) + static_cast<std::size_t>(basis[s]);
        }
        Matrix<F>& m = target.mats[tuple];
        const auto& entries = io_detail::require(comp, "entries", "component");
        if (!entries.is_array() || entries.size() != m.rows())
            throw std::invalid_argument("cochain: entries must have one row per target dimension");
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (!entries[r].is_array() || entries[r].size() != m.cols())
                throw std::invalid_argument("cochain: row length must equal the source dimension");
            for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = parse_entry(k, entries[r][c]);
        }
    }
    return out;
}

template <class F>
Json cochain_to_json(const Cochain<F>& x) {
    const F& k = x.field();
    const GradedAlgebra<F>& a = x.algebra();
    Json j;
    j["schema"] = "mcmod/cochain/v1";
    j["field"] = k.spec().str();
    j["window"] = {x.dims().lo, x.dims().hi()};
    j["dims"] = x.dims().dims;
    j["degree"] = x.degree();
    Json comps = Json::array();
    for (const auto& c : x.components()) {
        std::vector<std::size_t> radices;
        for (int d : c.comp) radices.push_back(static_cast<std::size_t>(a.dim(d)));
        for (std::size_t t = 0; t < c.mats.size(); ++t) {
            if (c.mats[t].is_zero()) continue;
            Json entry;
            entry["source"] = c.source;
            entry["composition"] = c.comp;
            const auto tuple = detail::decode_tuple(t, radices);
            Json basis = Json::array(), labels = Json::array();
            for (std::size_t s = 0; s < tuple.size(); ++s) {
                basis.push_back(tuple[s]);
                labels.push_back(a.labels(c.comp[s])[tuple[s]]);
            }
            entry["basis"] = basis;
            entry["basisLabels"] = labels;
            Json rows = Json::array();
            for (std::size_t r = 0; r < c.mats[t].rows(); ++r) {
                Json row = Json::array();
                for (std::size_t cc = 0; cc < c.mats[t].cols(); ++cc)
                    row.push_back(entry_to_json(k, c.mats[t].at(r, cc)));
                rows.push_back(row);
            }
            entry["entries"] = rows;
            comps.push_back(entry);
        }
    }
    j["components"] = comps;
    return j;
}

// ---- reports -------------------------------------------------------------------------

template <class F>
Json gpoly_to_json(const GPoly<F>& p) {
    Json terms = Json::array();
    for (const auto& [mono, coeff] : p.terms()) {
        Json t;
        t["coeff"] = p.field().str(coeff);
        Json m = Json::array();
        for (const auto& [var, exp] : mono)
            m.push_back(Json::array({p.table()->vars[var].name, exp}));
        t["monomial"] = m;
        terms.push_back(t);
    }
    Json j;
    j["terms"] = terms;
    j["text"] = p.str();
    return j;
}

inline Json generator_to_json(const GeneratorInfo& g) {
    Json j;
    j["name"] = g.name;
    j["level"] = g.level;
    j["degree"] = g.hdeg;
    j["source"] = g.source;
    j["composition"] = g.comp;
    j["basis"] = g.tuple;
    j["basisLabels"] = g.tuple_labels;
    j["row"] = g.row;
    j["col"] = g.col;
    return j;
}

template <class F>
Json mc_ideal_to_json(const McIdeal<F>& ideal) {
    Json j;
    Json gens = Json::array();
    const auto it = ideal.table->level_offset.find(2);
    const std::size_t off = it == ideal.table->level_offset.end() ? 0 : it->second;
    for (std::size_t g = 0; g < ideal.generators.size(); ++g) {
        Json e;
        e["coordinate"] = generator_to_json(ideal.table->vars[off + g]);
        e["polynomial"] = gpoly_to_json(ideal.generators[g]);
        gens.push_back(e);
    }
    j["generatorCount"] = ideal.generators.size();
    j["generators"] = gens;
    return j;
}

template <class F>
Json presentation_to_json(const DGAlgebraPresentation<F>& pres) {
    Json j;
    Json gens = Json::array();
    for (std::size_t g = 0; g < pres.table->size(); ++g) {
        Json e = generator_to_json(pres.table->vars[g]);
        e["qImage"] = gpoly_to_json(pres.q_images[g]);
        gens.push_back(e);
    }
    j["window"] = {pres.dims.lo, pres.dims.hi()};
    j["dims"] = pres.dims.dims;
    j["generators"] = gens;
    return j;
}

template <class F>
std::string presentation_to_text(const DGAlgebraPresentation<F>& pres) {
    std::string out;
    for (std::size_t g = 0; g < pres.table->size(); ++g) {
        const auto& v = pres.table->vars[g];
        out += "q(" + v.name + ") = " + pres.q_images[g].str() + "   [degree " +
               std::to_string(v.hdeg) + " -> " + std::to_string(v.hdeg + 1) + "]\n";
    }
    return out;
}

inline Json cohomology_to_json(const CohomologyReport& r) {
    Json j;
    j["window"] = {r.window_lo, r.window_hi};
    j["alpha"] = r.alpha;
    j["lDims"] = r.l_dims;
    j["dims"] = r.dims;
    j["augmented"] = r.augmented;
    j["eulerCharacteristic"] = r.euler();
    return j;
}

template <class F>
Json witness_to_json(const F& k, const SubmoduleWitness<F>& w) {
    Json j;
    j["profile"] = w.profile();
    Json bases = Json::array();
    for (const auto& b : w.bases) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < b.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(entry_to_json(k, b.at(r, c)));
            rows.push_back(row);
        }
        bases.push_back(rows);
    }
    j["bases"] = bases;
    return j;
}

inline Json verdict_to_json(const StabilityVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    if (v.exact_rational) {
        j["certificateLevel"] = "ExactRational";
    } else {
        j["certificateLevel"] = "FiniteFieldEvidence";
        j["evidencePrimes"] = v.evidence_primes;
    }
    if (v.rational_witness) j["witness"] = witness_to_json(RationalField{}, *v.rational_witness);
    Json scans = Json::array();
    for (const auto& s : v.scans) {
        Json e;
        e["p"] = s.p;
        e["status"] = to_string(s.status);
        e["minTheta"] = s.min_theta;
        e["submoduleCount"] = s.submodule_count;
        if (s.witness) e["witness"] = witness_to_json(PrimeField(s.p), *s.witness);
        scans.push_back(e);
    }
    j["scans"] = scans;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline Json gotzmann_to_json(const GotzmannReport& r) {
    Json j;
    j["macaulayOK"] = r.macaulay_ok;
    if (r.first_violation) j["firstViolation"] = *r.first_violation;
    if (r.persistent_from) j["persistentFrom"] = *r.persistent_from;
    j["skippedPairs"] = r.skipped_pairs;
    return j;
}

inline Json pipeline_to_json(const PipelineReport& r) {
    Json j;
    j["window"] = {r.window_lo, r.window_hi};
    j["truncationDegree"] = r.truncation_degree;
    j["targetDegree"] = r.target_degree;
    j["fields"] = r.fields;
    j["generatedInLowestDegree"] = r.generated_in_lowest_degree;
    if (r.extended_hilbert) j["extendedHilbert"] = *r.extended_hilbert;
    if (r.gotzmann) j["gotzmann"] = gotzmann_to_json(*r.gotzmann);
    j["macaulayHypothesisHolds"] = r.hypothesis_holds;
    if (r.stability) j["stability"] = verdict_to_json(*r.stability);
    if (r.truncated_stability) j["truncatedStability"] = verdict_to_json(*r.truncated_stability);
    j["combined"] = r.combined;
    return j;
}

}  // namespace mcmod
