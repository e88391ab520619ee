#pragma once

#include <fstream>

#include <json.hpp>

#include "flk/kernel_a1.hpp"
#include "flk/small_quantum.hpp"
#include "flk/tower.hpp"

namespace flk {

using nlohmann::json;

inline constexpr const char* kAlgebraFormat = "flk.alg";
inline constexpr int kAlgebraVersion = 1;

// ---------------------------------------------------------------- field ----

inline json field_to_json(const FieldCtx& F) {
    json j;
    j["p"] = F.p();
    j["ell"] = F.ell();
    j["factor_index"] = F.factor_index();
    j["min_poly"] = F.min_poly();  // empty in characteristic zero
    return j;
}

/// Rebuild the field from a dump header; the recorded minimal polynomial must
/// match the one the factorization reproduces.
inline FieldPtr field_from_json(const json& j) {
    FieldPtr F = make_field(j.at("p").get<long>(), j.at("ell").get<long>(),
                            j.at("factor_index").get<size_t>());
    if (j.at("min_poly").get<PPoly>() != F->min_poly())
        throw FieldMismatch("recorded minimal polynomial does not match the field context");
    return F;
}

inline json elem_to_json(const FieldElement& e) {
    if (e.ctx() == nullptr || e.ctx()->finite()) return json(e.finite_coeffs());
    std::vector<std::string> s;
    for (const auto& c : e.rational_coeffs()) s.push_back(c.get_str());
    return json(s);
}

inline FieldElement elem_from_json(const FieldCtx& F, const json& j) {
    FieldElement e = F.zero();
    if (F.finite()) {
        auto c = j.get<std::vector<long>>();
        for (size_t i = 0; i < c.size(); ++i) e += F.from_long(c[i]) * F.zeta_power(i);
    } else {
        auto c = j.get<std::vector<std::string>>();
        for (size_t i = 0; i < c.size(); ++i)
            e += F.from_mpq(mpq_class(c[i])) * F.zeta_power(static_cast<long>(i));
    }
    return e;
}

// -------------------------------------------------------------- recipes ----

/// Rebuild an algebra from the self-describing recipe stored in a dump.
inline BasedAlgebra build_from_recipe(const json& r, FieldPtr F) {
    std::string builder = r.at("builder").get<std::string>();
    if (builder == "small_quantum") {
        std::string type = r.at("type").get<std::string>();
        RootDatum R = build_root_datum(type.at(0), type.at(1) - '0');
        return build_small_quantum(R, F, r.at("part").get<std::string>().at(0)).algebra();
    }
    if (builder == "kernel_a1") {
        return build_dividedpower_kernel_A1(F, r.at("r").get<long>(),
                                            r.at("part").get<std::string>().at(0))
            .algebra();
    }
    if (builder == "tower") {
        std::string type = r.at("type").get<std::string>();
        RootDatum R = build_root_datum(type.at(0), type.at(1) - '0');
        std::set<size_t> kill;
        for (size_t g : r.at("kill").get<std::vector<size_t>>()) kill.insert(g);
        return build_tower_algebra(R, F, r.at("r").get<long>(), kill,
                                   r.value("cutoff", 0L));
    }
    throw VersionMismatch("unknown recipe builder '" + builder + "'");
}

// ---------------------------------------------------------------- dumps ----

/// Serialize an algebra.  Small algebras are materialized in full; above
/// `materialize_limit` only the products already in the cache are stored
/// together with the rebuild recipe.
inline json algebra_to_json(const BasedAlgebra& A, const json& recipe,
                            size_t materialize_limit = 200) {
    json j;
    j["format"] = kAlgebraFormat;
    j["version"] = kAlgebraVersion;
    j["field"] = field_to_json(*A.field);
    j["kind"] = A.kind;
    j["labels"] = A.labels;
    j["unit_index"] = A.unit_index;
    j["truncated"] = A.truncated;
    j["cutoff"] = A.cutoff;
    j["recipe"] = recipe;
    json w = json::array();
    for (const Weight& x : A.weights) w.push_back(x.fund);
    j["weights"] = std::move(w);
    json aug = json::array();
    for (const FieldElement& e : A.augmentation) aug.push_back(elem_to_json(e));
    j["augmentation"] = std::move(aug);
    j["filtration"] = A.filtration;
    j["internal_degree"] = A.internal_degree;
    bool full = A.dim() <= materialize_limit;
    j["materialized"] = full;
    json prods = json::array();
    auto emit = [&](size_t a, size_t b, const SparseVec& v) {
        json terms = json::array();
        for (const auto& [k, c] : v) terms.push_back(json::array({k, elem_to_json(c)}));
        prods.push_back(json::array({a, b, std::move(terms)}));
    };
    if (full) {
        for (size_t a = 0; a < A.dim(); ++a)
            for (size_t b = 0; b < A.dim(); ++b) emit(a, b, A.mul(a, b));
    } else {
        for (const auto& [key, v] : A.cached_products()) emit(key.first, key.second, v);
    }
    j["products"] = std::move(prods);
    return j;
}

inline BasedAlgebra algebra_from_json(const json& j) {
    if (!j.contains("format") || j.at("format").get<std::string>() != kAlgebraFormat ||
        j.at("version").get<int>() != kAlgebraVersion)
        throw VersionMismatch("not a supported algebra dump");
    FieldPtr F = field_from_json(j.at("field"));

    auto table = std::make_shared<std::map<std::pair<size_t, size_t>, SparseVec>>();
    for (const auto& row : j.at("products")) {
        SparseVec v;
        for (const auto& term : row.at(2))
            v.emplace(term.at(0).get<size_t>(), elem_from_json(*F, term.at(1)));
        (*table)[{row.at(0).get<size_t>(), row.at(1).get<size_t>()}] = std::move(v);
    }

    BasedAlgebra A;
    bool materialized = j.at("materialized").get<bool>();
    if (materialized) {
        A.field = F;
        A.kind = j.at("kind").get<std::string>();
        A.labels = j.at("labels").get<std::vector<std::string>>();
        for (const auto& w : j.at("weights")) A.weights.push_back(Weight{w.get<std::vector<long>>()});
        for (const auto& e : j.at("augmentation")) A.augmentation.push_back(elem_from_json(*F, e));
        A.unit_index = j.at("unit_index").get<size_t>();
        A.filtration = j.at("filtration").get<std::vector<long>>();
        A.internal_degree = j.at("internal_degree").get<std::vector<long>>();
        A.truncated = j.at("truncated").get<bool>();
        A.cutoff = j.at("cutoff").get<long>();
        std::string kind = A.kind;
        A.mul_fn = [table, kind](size_t a, size_t b) -> SparseVec {
            auto it = table->find({a, b});
            if (it == table->end())
                throw Error(kind + ": product (" + std::to_string(a) + "," + std::to_string(b) +
                            ") missing from the dump");
            return it->second;
        };
        return A;
    }
    // lazy dump: rebuild from the recipe, then check the recorded products
    A = build_from_recipe(j.at("recipe"), F);
    if (A.kind != j.at("kind").get<std::string>() || A.dim() != j.at("labels").size())
        throw VersionMismatch("recipe rebuild disagrees with the dump header");
    for (const auto& [key, v] : *table)
        if (A.mul(key.first, key.second) != v)
            throw Error(A.kind + ": recorded product disagrees with the rebuilt algebra");
    return A;
}

inline void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return json::parse(in);
}

}  // namespace flk
