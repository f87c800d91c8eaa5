#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "complexes.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "lincat.hpp"
#include "matrix.hpp"
#include "rep.hpp"

// File formats.  Coefficients are strings ("3/4", "2") so nothing is rounded;
// bare JSON integers are accepted on input.  Writers omit zero entries (zero
// hom dimensions, all-zero tensors and matrices, empty coordinate lists), and
// readers fill them back in, so write-then-read is the identity.
//
//   category  {"objects":[...], "hom":{"a->b":d}, "comp":{"a->b->c":[[[s]]]},
//              "id":{"a":[s]}}                        + optional "name","field"
//   algebra   {"mult":[[[s]]], "unit":[s], "idem":[s]} + optional "name","field"
//   rep       {"cat":name, "dim":{"a":d}, "action":{"a->b#i":[[s]]}}
//   nat       {"comps":{"a":[[s]]}}
//   complex   {"cat":name, "terms":{"n":rep}, "diff":{"n":nat}}, degree keys
//             are decimal integers and diff "n" maps term n to term n-1
//
// The per-matrix entry budget is enforced here, at the boundary.

namespace recollem {

using nlohmann::json;

namespace detail {

inline std::string json_type_name(const json& j) { return j.type_name(); }

inline const json& member(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(where + ": missing key \"" + key + "\"");
    return *it;
}

inline std::size_t size_member(const json& j, const std::string& where) {
    if (!j.is_number_unsigned())
        throw SchemaError(where + ": expected a non-negative integer, got " +
                          json_type_name(j));
    return j.get<std::size_t>();
}

template <ExactField K>
K entry_from_json(const json& j, const FieldSpec& spec, const std::string& where) {
    if (j.is_string()) return FieldTraits<K>::parse(j.get<std::string>(), spec);
    if (j.is_number_integer())
        return FieldTraits<K>::parse(std::to_string(j.get<long long>()), spec);
    throw SchemaError(where + ": coefficient must be a string or integer, got " +
                      json_type_name(j));
}

// Object ids appear inside "a->b#i" style keys, so they must not collide with
// the separators.
inline void check_id_usable(const std::string& id, const std::string& where) {
    if (id.empty()) throw SchemaError(where + ": empty object id");
    if (id.find("->") != std::string::npos || id.find('#') != std::string::npos)
        throw SchemaError(where + ": object id \"" + id + "\" may not contain \"->\" or \"#\"");
}

inline std::vector<std::string> split_arrows(const std::string& key) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = key.find("->", pos);
        if (next == std::string::npos) {
            parts.push_back(key.substr(pos));
            return parts;
        }
        parts.push_back(key.substr(pos, next - pos));
        pos = next + 2;
    }
}

inline void check_field_tag(const json& j, const FieldSpec& spec, const std::string& where) {
    const auto it = j.find("field");
    if (it == j.end()) return;
    if (!it->is_string()) throw SchemaError(where + ".field: expected a string");
    const FieldSpec declared = FieldSpec::parse(it->get<std::string>());
    if (!(declared == spec))
        throw SchemaError(where + ": file declares field " + declared.str() +
                          " but was loaded as " + spec.str());
}

}  // namespace detail

inline std::string json_name(const json& j, const std::string& where) {
    const auto it = j.find("name");
    if (it == j.end()) return "";
    if (!it->is_string()) throw SchemaError(where + ".name: expected a string");
    return it->get<std::string>();
}

// ---------------------------------------------------------------------------
// Matrices

template <ExactField K>
json matrix_to_json(const Matrix<K>& m) {
    check_entry_budget(m.rows(), m.cols());
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(FieldTraits<K>::to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <ExactField K>
Matrix<K> matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                           const FieldSpec& spec, const std::string& where) {
    check_entry_budget(rows, cols);
    if (!j.is_array()) throw SchemaError(where + ": expected an array of rows");
    if (j.size() != rows)
        throw SchemaError(where + ": expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(j.size()));
    Matrix<K> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw SchemaError(where + "[" + std::to_string(i) + "]: expected " +
                              std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = detail::entry_from_json<K>(
                row[c], spec, where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
    return m;
}

template <ExactField K>
std::vector<K> coords_from_json(const json& j, std::size_t len, const FieldSpec& spec,
                                const std::string& where) {
    if (!j.is_array() || j.size() != len)
        throw SchemaError(where + ": expected an array of " + std::to_string(len) +
                          " coefficients");
    std::vector<K> v(len, K(0));
    for (std::size_t i = 0; i < len; ++i)
        v[i] = detail::entry_from_json<K>(j[i], spec, where + "[" + std::to_string(i) + "]");
    return v;
}

template <ExactField K>
json coords_to_json(const std::vector<K>& v) {
    json out = json::array();
    for (const K& c : v) out.push_back(FieldTraits<K>::to_string(c));
    return out;
}

// ---------------------------------------------------------------------------
// Categories

template <ExactField K>
json lincat_to_json(const LinCat<K>& c, const std::string& name = "") {
    const std::size_t n = c.num_objects();
    json out = json::object();
    if (!name.empty()) out["name"] = name;
    json objs = json::array();
    for (std::size_t a = 0; a < n; ++a) {
        detail::check_id_usable(c.object_id(a), "objects");
        objs.push_back(c.object_id(a));
    }
    out["objects"] = std::move(objs);

    json hom = json::object();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (c.hom_dim(a, b) > 0)
                hom[c.object_id(a) + "->" + c.object_id(b)] = c.hom_dim(a, b);
    out["hom"] = std::move(hom);

    json comp = json::object();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc) {
                const std::size_t dab = c.hom_dim(a, b), dbc = c.hom_dim(b, cc),
                                  dac = c.hom_dim(a, cc);
                if (dab * dbc * dac == 0) continue;
                bool nonzero = false;
                json tensor = json::array();
                for (std::size_t f = 0; f < dab; ++f) {
                    json layer = json::array();
                    for (std::size_t g = 0; g < dbc; ++g) {
                        json fiber = json::array();
                        for (std::size_t k = 0; k < dac; ++k) {
                            const K v = c.comp_coeff(a, b, cc, f, g, k);
                            if (!(v == K(0))) nonzero = true;
                            fiber.push_back(FieldTraits<K>::to_string(v));
                        }
                        layer.push_back(std::move(fiber));
                    }
                    tensor.push_back(std::move(layer));
                }
                if (nonzero)
                    comp[c.object_id(a) + "->" + c.object_id(b) + "->" + c.object_id(cc)] =
                        std::move(tensor);
            }
    out["comp"] = std::move(comp);

    json id = json::object();
    for (std::size_t a = 0; a < n; ++a)
        if (!c.identity_coords(a).empty())
            id[c.object_id(a)] = coords_to_json(c.identity_coords(a));
    out["id"] = std::move(id);
    return out;
}

template <ExactField K>
LinCat<K> lincat_from_json(const json& j, const FieldSpec& spec) {
    if (!j.is_object()) throw SchemaError("category: expected an object");
    detail::check_field_tag(j, spec, "category");
    const json& objs = detail::member(j, "objects", "category");
    if (!objs.is_array() || objs.empty())
        throw SchemaError("category.objects: expected a non-empty array");

    typename LinCat<K>::Data d;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < objs.size(); ++i) {
        if (!objs[i].is_string())
            throw SchemaError("category.objects[" + std::to_string(i) + "]: expected a string");
        const std::string id = objs[i].get<std::string>();
        detail::check_id_usable(id, "category.objects");
        if (!index.emplace(id, i).second)
            throw SchemaError("category.objects: duplicate id \"" + id + "\"");
        d.objects.push_back(id);
    }
    const std::size_t n = d.objects.size();
    auto lookup = [&](const std::string& id, const std::string& where) {
        const auto it = index.find(id);
        if (it == index.end())
            throw SchemaError(where + ": unknown object \"" + id + "\"");
        return it->second;
    };

    d.hom_dim.assign(n, std::vector<std::size_t>(n, 0));
    const json& hom = detail::member(j, "hom", "category");
    if (!hom.is_object()) throw SchemaError("category.hom: expected an object");
    for (const auto& [key, val] : hom.items()) {
        const auto parts = detail::split_arrows(key);
        if (parts.size() != 2)
            throw SchemaError("category.hom: key \"" + key + "\" is not of the form a->b");
        const std::size_t a = lookup(parts[0], "category.hom." + key);
        const std::size_t b = lookup(parts[1], "category.hom." + key);
        d.hom_dim[a][b] = detail::size_member(val, "category.hom." + key);
        check_entry_budget(d.hom_dim[a][b], 1);
    }

    const json& comp = detail::member(j, "comp", "category");
    if (!comp.is_object()) throw SchemaError("category.comp: expected an object");
    std::map<std::size_t, std::vector<K>> tensors;
    for (const auto& [key, val] : comp.items()) {
        const std::string where = "category.comp." + key;
        const auto parts = detail::split_arrows(key);
        if (parts.size() != 3)
            throw SchemaError("category.comp: key \"" + key + "\" is not of the form a->b->c");
        const std::size_t a = lookup(parts[0], where), b = lookup(parts[1], where),
                          c = lookup(parts[2], where);
        const std::size_t dab = d.hom_dim[a][b], dbc = d.hom_dim[b][c], dac = d.hom_dim[a][c];
        check_entry_budget(dab * dbc, dac);
        if (!val.is_array() || val.size() != dab)
            throw SchemaError(where + ": expected " + std::to_string(dab) + " outer entries");
        std::vector<K> t(dab * dbc * dac, K(0));
        for (std::size_t f = 0; f < dab; ++f) {
            const json& layer = val[f];
            if (!layer.is_array() || layer.size() != dbc)
                throw SchemaError(where + ": expected " + std::to_string(dbc) +
                                  " entries at depth 2");
            for (std::size_t g = 0; g < dbc; ++g) {
                const json& fiber = layer[g];
                if (!fiber.is_array() || fiber.size() != dac)
                    throw SchemaError(where + ": expected " + std::to_string(dac) +
                                      " entries at depth 3");
                for (std::size_t k = 0; k < dac; ++k)
                    t[(f * dbc + g) * dac + k] =
                        detail::entry_from_json<K>(fiber[k], spec, where);
            }
        }
        tensors[(a * n + b) * n + c] = std::move(t);
    }
    // omitted tensors are zero; make() wants every nonempty shape present
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const std::size_t want = d.hom_dim[a][b] * d.hom_dim[b][c] * d.hom_dim[a][c];
                const std::size_t key = (a * n + b) * n + c;
                if (want > 0 && !tensors.count(key))
                    tensors[key] = std::vector<K>(want, K(0));
            }
    d.comp = std::move(tensors);

    const json& id = detail::member(j, "id", "category");
    if (!id.is_object()) throw SchemaError("category.id: expected an object");
    d.id.assign(n, {});
    for (std::size_t a = 0; a < n; ++a) d.id[a].assign(d.hom_dim[a][a], K(0));
    for (const auto& [key, val] : id.items()) {
        const std::size_t a = lookup(key, "category.id");
        d.id[a] = coords_from_json<K>(val, d.hom_dim[a][a], spec, "category.id." + key);
    }
    return LinCat<K>::make(std::move(d));
}

// ---------------------------------------------------------------------------
// Algebras with a chosen idempotent

template <ExactField K>
json algebra_to_json(const AlgebraWithIdempotent<K>& a, const std::string& name = "") {
    const std::size_t d = a.alg.dim;
    check_entry_budget(d * d, d);
    json out = json::object();
    if (!name.empty()) out["name"] = name;
    json mult = json::array();
    for (std::size_t i = 0; i < d; ++i) {
        json layer = json::array();
        for (std::size_t jj = 0; jj < d; ++jj) {
            json fiber = json::array();
            for (std::size_t k = 0; k < d; ++k)
                fiber.push_back(FieldTraits<K>::to_string(a.alg.mult[(i * d + jj) * d + k]));
            layer.push_back(std::move(fiber));
        }
        mult.push_back(std::move(layer));
    }
    out["mult"] = std::move(mult);
    out["unit"] = coords_to_json(a.alg.unit);
    out["idem"] = coords_to_json(a.idem);
    return out;
}

template <ExactField K>
AlgebraWithIdempotent<K> algebra_from_json(const json& j, const FieldSpec& spec) {
    if (!j.is_object()) throw SchemaError("algebra: expected an object");
    detail::check_field_tag(j, spec, "algebra");
    const json& unit = detail::member(j, "unit", "algebra");
    if (!unit.is_array() || unit.empty())
        throw SchemaError("algebra.unit: expected a non-empty array");
    const std::size_t d = unit.size();
    check_entry_budget(d * d, d);

    std::vector<K> u = coords_from_json<K>(unit, d, spec, "algebra.unit");
    const json& mult = detail::member(j, "mult", "algebra");
    if (!mult.is_array() || mult.size() != d)
        throw SchemaError("algebra.mult: expected " + std::to_string(d) + " outer entries");
    std::vector<K> m(d * d * d, K(0));
    for (std::size_t i = 0; i < d; ++i) {
        const json& layer = mult[i];
        if (!layer.is_array() || layer.size() != d)
            throw SchemaError("algebra.mult[" + std::to_string(i) + "]: expected " +
                              std::to_string(d) + " entries");
        for (std::size_t jj = 0; jj < d; ++jj) {
            const json& fiber = layer[jj];
            if (!fiber.is_array() || fiber.size() != d)
                throw SchemaError("algebra.mult[" + std::to_string(i) + "][" +
                                  std::to_string(jj) + "]: expected " + std::to_string(d) +
                                  " entries");
            for (std::size_t k = 0; k < d; ++k)
                m[(i * d + jj) * d + k] = detail::entry_from_json<K>(
                    fiber[k], spec, "algebra.mult[" + std::to_string(i) + "]");
        }
    }
    AlgebraWithIdempotent<K> out;
    out.alg = Algebra<K>::make(d, std::move(m), std::move(u));
    out.idem = coords_from_json<K>(detail::member(j, "idem", "algebra"), d, spec, "algebra.idem");
    return out;
}

// ---------------------------------------------------------------------------
// Representations and natural transformations

template <ExactField K>
json rep_to_json(const Rep<K>& x, const std::string& cat_name = "") {
    const LinCat<K>& c = *x.cat;
    json out = json::object();
    if (!cat_name.empty()) out["cat"] = cat_name;
    json dim = json::object();
    for (std::size_t a = 0; a < c.num_objects(); ++a)
        if (x.dims[a] > 0) dim[c.object_id(a)] = x.dims[a];
    out["dim"] = std::move(dim);
    json action = json::object();
    for (std::size_t a = 0; a < c.num_objects(); ++a)
        for (std::size_t b = 0; b < c.num_objects(); ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) {
                const Matrix<K>& m = x.action(a, b, i);
                if (m.is_zero()) continue;
                action[c.object_id(a) + "->" + c.object_id(b) + "#" + std::to_string(i)] =
                    matrix_to_json(m);
            }
    out["action"] = std::move(action);
    return out;
}

template <ExactField K>
Rep<K> rep_from_json(const json& j, LinCatPtr<K> cat, const FieldSpec& spec,
                     const std::string& expected_cat_name = "") {
    if (!j.is_object()) throw SchemaError("rep: expected an object");
    detail::check_field_tag(j, spec, "rep");
    const LinCat<K>& c = *cat;
    if (!expected_cat_name.empty()) {
        const auto it = j.find("cat");
        if (it != j.end() && it->is_string() && !it->get<std::string>().empty() &&
            it->get<std::string>() != expected_cat_name)
            throw SchemaError("rep.cat: representation is over \"" + it->get<std::string>() +
                              "\", not \"" + expected_cat_name + "\"");
    }
    std::vector<std::size_t> dims(c.num_objects(), 0);
    const json& dim = detail::member(j, "dim", "rep");
    if (!dim.is_object()) throw SchemaError("rep.dim: expected an object");
    for (const auto& [key, val] : dim.items()) {
        std::size_t a;
        try {
            a = c.object_index(key);
        } catch (const LookupError&) {
            throw SchemaError("rep.dim: unknown object \"" + key + "\"");
        }
        dims[a] = detail::size_member(val, "rep.dim." + key);
        check_entry_budget(dims[a], 1);
    }
    Rep<K> x = make_zero_shaped_rep<K>(std::move(cat), std::move(dims));

    const json& action = detail::member(j, "action", "rep");
    if (!action.is_object()) throw SchemaError("rep.action: expected an object");
    for (const auto& [key, val] : action.items()) {
        const std::string where = "rep.action." + key;
        const std::size_t hash = key.rfind('#');
        if (hash == std::string::npos)
            throw SchemaError(where + ": key is not of the form a->b#i");
        const auto parts = detail::split_arrows(key.substr(0, hash));
        if (parts.size() != 2)
            throw SchemaError(where + ": key is not of the form a->b#i");
        std::size_t a, b;
        try {
            a = c.object_index(parts[0]);
            b = c.object_index(parts[1]);
        } catch (const LookupError&) {
            throw SchemaError(where + ": unknown object in key");
        }
        std::size_t i = 0;
        try {
            i = static_cast<std::size_t>(std::stoull(key.substr(hash + 1)));
        } catch (const std::exception&) {
            throw SchemaError(where + ": bad basis index");
        }
        if (i >= c.hom_dim(a, b))
            throw SchemaError(where + ": basis index " + std::to_string(i) +
                              " out of range for hom of dimension " +
                              std::to_string(c.hom_dim(a, b)));
        x.act[{a, b}][i] = matrix_from_json<K>(val, x.dims[b], x.dims[a], spec, where);
    }
    return x;
}

template <ExactField K>
json nat_to_json(const NatTrans<K>& t) {
    const LinCat<K>& c = *t.src.cat;
    json comps = json::object();
    for (std::size_t a = 0; a < t.comps.size(); ++a)
        if (!t.comps[a].is_zero()) comps[c.object_id(a)] = matrix_to_json(t.comps[a]);
    json out = json::object();
    out["comps"] = std::move(comps);
    return out;
}

template <ExactField K>
NatTrans<K> nat_from_json(const json& j, Rep<K> src, Rep<K> dst, const FieldSpec& spec,
                          const std::string& where = "nat") {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    const LinCat<K>& c = *src.cat;
    NatTrans<K> t = zero_nat(std::move(src), std::move(dst));
    const json& comps = detail::member(j, "comps", where);
    if (!comps.is_object()) throw SchemaError(where + ".comps: expected an object");
    for (const auto& [key, val] : comps.items()) {
        std::size_t a;
        try {
            a = c.object_index(key);
        } catch (const LookupError&) {
            throw SchemaError(where + ".comps: unknown object \"" + key + "\"");
        }
        t.comps[a] = matrix_from_json<K>(val, t.dst.dims[a], t.src.dims[a], spec,
                                         where + ".comps." + key);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Complexes

template <ExactField K>
json complex_to_json(const Complex<K>& x, const std::string& cat_name = "") {
    json out = json::object();
    if (!cat_name.empty()) out["cat"] = cat_name;
    json terms = json::object();
    for (const auto& [n, t] : x.terms)
        if (t.total_dim() > 0) terms[std::to_string(n)] = rep_to_json(t);
    out["terms"] = std::move(terms);
    json diff = json::object();
    for (const auto& [n, t] : x.diff)
        if (!nat_is_zero(t)) diff[std::to_string(n)] = nat_to_json(t);
    out["diff"] = std::move(diff);
    return out;
}

template <ExactField K>
Complex<K> complex_from_json(const json& j, LinCatPtr<K> cat, const FieldSpec& spec,
                             const std::string& expected_cat_name = "") {
    if (!j.is_object()) throw SchemaError("complex: expected an object");
    detail::check_field_tag(j, spec, "complex");
    if (!expected_cat_name.empty()) {
        const auto it = j.find("cat");
        if (it != j.end() && it->is_string() && !it->get<std::string>().empty() &&
            it->get<std::string>() != expected_cat_name)
            throw SchemaError("complex.cat: complex is over \"" + it->get<std::string>() +
                              "\", not \"" + expected_cat_name + "\"");
    }
    const auto degree = [](const std::string& key, const std::string& where) -> int {
        try {
            std::size_t used = 0;
            const int n = std::stoi(key, &used);
            if (used != key.size()) throw SchemaError("");
            return n;
        } catch (const std::exception&) {
            throw SchemaError(where + ": degree key \"" + key + "\" is not an integer");
        }
    };
    Complex<K> x;
    x.cat = cat;
    const json& terms = detail::member(j, "terms", "complex");
    if (!terms.is_object()) throw SchemaError("complex.terms: expected an object");
    for (const auto& [key, val] : terms.items()) {
        const int n = degree(key, "complex.terms");
        Rep<K> t = rep_from_json<K>(val, cat, spec, expected_cat_name);
        if (t.total_dim() > 0) x.terms.emplace(n, std::move(t));
    }
    const auto it = j.find("diff");
    if (it != j.end()) {
        if (!it->is_object()) throw SchemaError("complex.diff: expected an object");
        for (const auto& [key, val] : it->items()) {
            const int n = degree(key, "complex.diff");
            x.diff.emplace(n, nat_from_json<K>(val, x.term(n), x.term(n - 1), spec,
                                               "complex.diff." + key));
        }
    }
    if (auto bad = validate_complex(x)) throw SchemaError("complex: " + *bad);
    return x;
}

// ---------------------------------------------------------------------------
// Files

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw SchemaError("write to " + path + " failed");
}

}  // namespace recollem
