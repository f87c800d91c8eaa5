#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace recollem {

// A finite k-linear category: finitely many objects, finite-dimensional hom
// spaces with chosen bases, composition given by structure constants
//
//     comp(a,b,c) : hom(a,b) (x) hom(b,c) -> hom(a,c),
//
// so comp(f: a->b, g: b->c) is the composite "g after f".  Identities are
// coordinate vectors in hom(a,a).  The structure is immutable after
// construction; shape problems throw at build time, the algebraic laws are
// checked by validate().
template <ExactField K>
class LinCat {
public:
    struct Data {
        std::vector<std::string> objects;
        // hom_dim[a][b] = dim hom(a,b), indexed by object position
        std::vector<std::vector<std::size_t>> hom_dim;
        // comp[(a*n+b)*n+c] has size dab*dbc*dac, laid out ((f*dbc)+g)*dac+k;
        // entries for triples with a zero-dimensional factor may be empty
        std::map<std::size_t, std::vector<K>> comp;
        // id[a] has size hom_dim[a][a]
        std::vector<std::vector<K>> id;
    };

    static LinCat make(Data d) {
        const std::size_t n = d.objects.size();
        if (d.hom_dim.size() != n) throw SchemaError("hom_dim table has wrong size");
        for (const auto& row : d.hom_dim)
            if (row.size() != n) throw SchemaError("hom_dim table has wrong size");
        {
            std::map<std::string, std::size_t> seen;
            for (std::size_t i = 0; i < n; ++i) {
                if (d.objects[i].empty()) throw SchemaError("empty object id");
                if (!seen.emplace(d.objects[i], i).second)
                    throw SchemaError("duplicate object id: " + d.objects[i]);
            }
        }
        if (d.id.size() != n) throw SchemaError("identity table has wrong size");
        for (std::size_t a = 0; a < n; ++a)
            if (d.id[a].size() != d.hom_dim[a][a])
                throw SchemaError("identity coordinates of " + d.objects[a] +
                                  " have wrong length");
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    const std::size_t want =
                        d.hom_dim[a][b] * d.hom_dim[b][c] * d.hom_dim[a][c];
                    const auto it = d.comp.find((a * n + b) * n + c);
                    const std::size_t got =
                        it == d.comp.end() ? 0 : it->second.size();
                    if (got != want)
                        throw SchemaError("composition tensor " + d.objects[a] + "->" +
                                          d.objects[b] + "->" + d.objects[c] +
                                          " has wrong size");
                }
        LinCat cat;
        cat.d_ = std::move(d);
        for (std::size_t i = 0; i < n; ++i) cat.index_[cat.d_.objects[i]] = i;
        return cat;
    }

    std::size_t num_objects() const { return d_.objects.size(); }
    const std::vector<std::string>& objects() const { return d_.objects; }
    const std::string& object_id(std::size_t i) const { return d_.objects.at(i); }

    std::size_t object_index(const std::string& id) const {
        const auto it = index_.find(id);
        if (it == index_.end()) throw LookupError("unknown object: " + id);
        return it->second;
    }

    std::size_t hom_dim(std::size_t a, std::size_t b) const {
        return d_.hom_dim.at(a).at(b);
    }

    const std::vector<K>& identity_coords(std::size_t a) const { return d_.id.at(a); }

    K comp_coeff(std::size_t a, std::size_t b, std::size_t c, std::size_t f,
                 std::size_t g, std::size_t k) const {
        const auto it = d_.comp.find(key(a, b, c));
        if (it == d_.comp.end()) return K(0);
        return it->second[(f * hom_dim(b, c) + g) * hom_dim(a, c) + k];
    }

    // Composite of coordinate vectors u in hom(a,b) and v in hom(b,c).
    std::vector<K> compose(std::size_t a, std::size_t b, std::size_t c,
                           const std::vector<K>& u, const std::vector<K>& v) const {
        if (u.size() != hom_dim(a, b) || v.size() != hom_dim(b, c))
            throw ShapeError("compose coordinate length mismatch");
        std::vector<K> w(hom_dim(a, c), K(0));
        for (std::size_t f = 0; f < u.size(); ++f) {
            if (u[f] == K(0)) continue;
            for (std::size_t g = 0; g < v.size(); ++g) {
                if (v[g] == K(0)) continue;
                const K uv = u[f] * v[g];
                for (std::size_t k = 0; k < w.size(); ++k)
                    w[k] += uv * comp_coeff(a, b, c, f, g, k);
            }
        }
        return w;
    }

    // Matrix of hom(a,b) -> hom(a,c), f |-> (g after f), for fixed g in hom(b,c).
    Matrix<K> postcompose_map(std::size_t a, std::size_t b, std::size_t c,
                              const std::vector<K>& g_coords) const {
        if (g_coords.size() != hom_dim(b, c))
            throw ShapeError("postcompose coordinate length mismatch");
        Matrix<K> m(hom_dim(a, c), hom_dim(a, b));
        for (std::size_t f = 0; f < m.cols(); ++f)
            for (std::size_t g = 0; g < g_coords.size(); ++g) {
                if (g_coords[g] == K(0)) continue;
                for (std::size_t k = 0; k < m.rows(); ++k)
                    m(k, f) += g_coords[g] * comp_coeff(a, b, c, f, g, k);
            }
        return m;
    }

    // Matrix of hom(b,c) -> hom(a,c), g |-> (g after f), for fixed f in hom(a,b).
    Matrix<K> precompose_map(std::size_t a, std::size_t b, std::size_t c,
                             const std::vector<K>& f_coords) const {
        if (f_coords.size() != hom_dim(a, b))
            throw ShapeError("precompose coordinate length mismatch");
        Matrix<K> m(hom_dim(a, c), hom_dim(b, c));
        for (std::size_t g = 0; g < m.cols(); ++g)
            for (std::size_t f = 0; f < f_coords.size(); ++f) {
                if (f_coords[f] == K(0)) continue;
                for (std::size_t k = 0; k < m.rows(); ++k)
                    m(k, g) += f_coords[f] * comp_coeff(a, b, c, f, g, k);
            }
        return m;
    }

    std::vector<K> basis_vector(std::size_t a, std::size_t b, std::size_t i) const {
        if (i >= hom_dim(a, b)) throw LookupError("hom basis index out of range");
        std::vector<K> v(hom_dim(a, b), K(0));
        v[i] = K(1);
        return v;
    }

    // First violated law, or nullopt when the data is a category.
    std::optional<std::string> validate() const {
        const std::size_t n = num_objects();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t f = 0; f < hom_dim(a, b); ++f) {
                    const auto fb = basis_vector(a, b, f);
                    if (compose(a, a, b, d_.id[a], fb) != fb)
                        return "unit law fails: id_" + object_id(a) + " then basis " +
                               hom_name(a, b, f);
                    if (compose(a, b, b, fb, d_.id[b]) != fb)
                        return "unit law fails: basis " + hom_name(a, b, f) + " then id_" +
                               object_id(b);
                }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d)
                        for (std::size_t f = 0; f < hom_dim(a, b); ++f)
                            for (std::size_t g = 0; g < hom_dim(b, c); ++g)
                                for (std::size_t h = 0; h < hom_dim(c, d); ++h) {
                                    const auto fg = compose(a, b, c, basis_vector(a, b, f),
                                                            basis_vector(b, c, g));
                                    const auto gh = compose(b, c, d, basis_vector(b, c, g),
                                                            basis_vector(c, d, h));
                                    if (compose(a, c, d, fg, basis_vector(c, d, h)) !=
                                        compose(a, b, d, basis_vector(a, b, f), gh))
                                        return "associativity fails at " + hom_name(a, b, f) +
                                               ", " + hom_name(b, c, g) + ", " +
                                               hom_name(c, d, h);
                                }
        return std::nullopt;
    }

    const Data& data() const { return d_; }

    friend bool operator==(const LinCat& x, const LinCat& y) {
        return x.d_.objects == y.d_.objects && x.d_.hom_dim == y.d_.hom_dim &&
               x.d_.comp == y.d_.comp && x.d_.id == y.d_.id;
    }
    friend bool operator!=(const LinCat& x, const LinCat& y) { return !(x == y); }

private:
    std::size_t key(std::size_t a, std::size_t b, std::size_t c) const {
        const std::size_t n = num_objects();
        return (a * n + b) * n + c;
    }

    std::string hom_name(std::size_t a, std::size_t b, std::size_t i) const {
        return object_id(a) + "->" + object_id(b) + "#" + std::to_string(i);
    }

    Data d_;
    std::map<std::string, std::size_t> index_;
};

template <ExactField K>
using LinCatPtr = std::shared_ptr<const LinCat<K>>;

// A chosen full subcategory: the ambient category, the selected objects (as
// ambient indices, strictly increasing) and the induced standalone category.
template <ExactField K>
struct Subcat {
    LinCatPtr<K> parent;
    std::vector<std::size_t> objects;
    LinCatPtr<K> cat;

    std::size_t size() const { return objects.size(); }
    bool contains(std::size_t ambient) const {
        return std::binary_search(objects.begin(), objects.end(), ambient);
    }
    std::size_t to_sub(std::size_t ambient) const {
        const auto it = std::lower_bound(objects.begin(), objects.end(), ambient);
        if (it == objects.end() || *it != ambient)
            throw LookupError("object not in subcategory");
        return static_cast<std::size_t>(it - objects.begin());
    }
    std::size_t to_ambient(std::size_t sub) const { return objects.at(sub); }
};

template <ExactField K>
Subcat<K> full_subcategory(LinCatPtr<K> c, std::vector<std::size_t> objs) {
    std::sort(objs.begin(), objs.end());
    objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
    for (std::size_t o : objs)
        if (o >= c->num_objects()) throw LookupError("subcategory object out of range");

    const std::size_t m = objs.size(), n = c->num_objects();
    typename LinCat<K>::Data d;
    d.hom_dim.assign(m, std::vector<std::size_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        d.objects.push_back(c->object_id(objs[i]));
        d.id.push_back(c->identity_coords(objs[i]));
        for (std::size_t j = 0; j < m; ++j) d.hom_dim[i][j] = c->hom_dim(objs[i], objs[j]);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                const std::size_t dab = d.hom_dim[i][j], dbc = d.hom_dim[j][k],
                                  dac = d.hom_dim[i][k];
                if (dab * dbc * dac == 0) continue;
                std::vector<K> t(dab * dbc * dac, K(0));
                for (std::size_t f = 0; f < dab; ++f)
                    for (std::size_t g = 0; g < dbc; ++g)
                        for (std::size_t l = 0; l < dac; ++l)
                            t[(f * dbc + g) * dac + l] =
                                c->comp_coeff(objs[i], objs[j], objs[k], f, g, l);
                d.comp[(i * m + j) * m + k] = std::move(t);
            }
    (void)n;
    Subcat<K> s;
    s.parent = std::move(c);
    s.objects = std::move(objs);
    s.cat = std::make_shared<const LinCat<K>>(LinCat<K>::make(std::move(d)));
    return s;
}

// Reverses all arrows; an involution on the nose.
template <ExactField K>
LinCat<K> opposite(const LinCat<K>& c) {
    const std::size_t n = c.num_objects();
    typename LinCat<K>::Data d;
    d.objects = c.objects();
    d.hom_dim.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        d.id.push_back(c.identity_coords(a));
        for (std::size_t b = 0; b < n; ++b) d.hom_dim[a][b] = c.hom_dim(b, a);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t e = 0; e < n; ++e) {
                const std::size_t dab = d.hom_dim[a][b], dbc = d.hom_dim[b][e],
                                  dac = d.hom_dim[a][e];
                if (dab * dbc * dac == 0) continue;
                std::vector<K> t(dab * dbc * dac, K(0));
                for (std::size_t f = 0; f < dab; ++f)
                    for (std::size_t g = 0; g < dbc; ++g)
                        for (std::size_t k = 0; k < dac; ++k)
                            t[(f * dbc + g) * dac + k] = c.comp_coeff(e, b, a, g, f, k);
                d.comp[(a * n + b) * n + e] = std::move(t);
            }
    return LinCat<K>::make(std::move(d));
}

// ---------------------------------------------------------------------------
// Quivers

struct QuiverArrow {
    std::string from, to, label;
};

// One relation: a linear combination of parallel, equal-length paths (each a
// sequence of arrow labels in application order: {"a","b"} means b after a).
template <ExactField K>
struct QuiverRelation {
    struct Term {
        std::vector<std::string> path;
        K coeff;
    };
    std::vector<Term> terms;
};

template <ExactField K>
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;
    std::vector<QuiverRelation<K>> relations;
    std::size_t nilpotency_bound = 8;
};

namespace detail {

struct QPath {
    std::size_t src = 0, dst = 0;
    std::vector<std::size_t> arrows;  // in application order

    friend bool operator<(const QPath& x, const QPath& y) {
        if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
        if (x.src != y.src) return x.src < y.src;
        if (x.dst != y.dst) return x.dst < y.dst;
        return x.arrows < y.arrows;
    }
    friend bool operator==(const QPath& x, const QPath& y) {
        return x.src == y.src && x.dst == y.dst && x.arrows == y.arrows;
    }
};

}  // namespace detail

// Path category of a quiver modulo relations.  Hom bases are the surviving
// paths (shortest first, then lexicographic by arrow index); errors if paths
// of length nilpotency_bound survive, since hom spaces beyond the bound are
// not examined.
template <ExactField K>
LinCat<K> from_quiver(const Quiver<K>& q) {
    using detail::QPath;
    const std::size_t n = q.vertices.size();
    if (n == 0) throw SchemaError("quiver needs at least one vertex");
    std::map<std::string, std::size_t> vindex;
    for (std::size_t i = 0; i < n; ++i)
        if (!vindex.emplace(q.vertices[i], i).second)
            throw SchemaError("duplicate vertex: " + q.vertices[i]);
    std::map<std::string, std::size_t> aindex;
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        const auto& ar = q.arrows[i];
        if (!vindex.count(ar.from) || !vindex.count(ar.to))
            throw SchemaError("arrow endpoint not a vertex: " + ar.label);
        if (ar.label.empty() || !aindex.emplace(ar.label, i).second)
            throw SchemaError("bad or duplicate arrow label: " + ar.label);
    }
    if (q.nilpotency_bound < 1) throw SchemaError("nilpotency bound must be positive");

    // Enumerate paths of length < bound, plus length == bound for the
    // finiteness check.
    constexpr std::size_t kPathBudget = 1 << 14;
    std::vector<QPath> paths;
    for (std::size_t v = 0; v < n; ++v) paths.push_back(QPath{v, v, {}});
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= q.nilpotency_bound; ++len) {
        const std::size_t level_end = paths.size();
        for (std::size_t p = level_begin; p < level_end; ++p)
            for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
                if (vindex.at(q.arrows[ai].from) != paths[p].dst) continue;
                QPath ext = paths[p];
                ext.dst = vindex.at(q.arrows[ai].to);
                ext.arrows.push_back(ai);
                paths.push_back(std::move(ext));
                if (paths.size() > kPathBudget)
                    throw LimitError("quiver path enumeration exceeds budget");
            }
        level_begin = level_end;
    }
    std::sort(paths.begin(), paths.end());
    std::map<QPath, std::size_t> pindex;
    for (std::size_t i = 0; i < paths.size(); ++i) pindex[paths[i]] = i;

    // Group paths per (src, dst).
    std::vector<std::vector<std::size_t>> grp(n * n);
    for (std::size_t i = 0; i < paths.size(); ++i)
        grp[paths[i].src * n + paths[i].dst].push_back(i);
    auto local_index = [&](std::size_t pid) {
        const auto& g = grp[paths[pid].src * n + paths[pid].dst];
        return static_cast<std::size_t>(
            std::lower_bound(g.begin(), g.end(), pid) - g.begin());
    };

    // Relation terms -> path vectors; only homogeneous relations (equal
    // length, parallel) are supported, which keeps the induced ideal graded.
    struct RelVec {
        std::size_t src, dst;
        std::vector<K> v;  // coordinates over grp[src*n+dst]
        std::size_t len;
    };
    std::vector<RelVec> relvecs;
    for (const auto& rel : q.relations) {
        if (rel.terms.empty()) continue;
        RelVec rv;
        bool first = true;
        for (const auto& term : rel.terms) {
            QPath p;
            p.arrows.reserve(term.path.size());
            if (term.path.empty()) throw SchemaError("relation term with empty path");
            for (const auto& lbl : term.path) {
                const auto it = aindex.find(lbl);
                if (it == aindex.end()) throw SchemaError("unknown arrow in relation: " + lbl);
                const std::size_t ai = it->second;
                if (p.arrows.empty())
                    p.src = vindex.at(q.arrows[ai].from);
                else if (vindex.at(q.arrows[ai].from) != p.dst)
                    throw SchemaError("relation path does not compose: " + lbl);
                p.dst = vindex.at(q.arrows[ai].to);
                p.arrows.push_back(ai);
            }
            if (first) {
                rv.src = p.src;
                rv.dst = p.dst;
                rv.len = p.arrows.size();
                rv.v.assign(grp[rv.src * n + rv.dst].size(), K(0));
                first = false;
            } else if (p.src != rv.src || p.dst != rv.dst || p.arrows.size() != rv.len) {
                throw SchemaError("relations must combine parallel paths of equal length");
            }
            const auto it = pindex.find(p);
            if (it == pindex.end())
                throw SchemaError("relation path exceeds the nilpotency bound");
            rv.v[local_index(it->second)] += term.coeff;
        }
        relvecs.push_back(std::move(rv));
    }

    // Two-sided ideal: all extensions post * rel * pre that stay within the
    // enumerated length window, collected per (src, dst).
    std::vector<std::vector<std::vector<K>>> ideal(n * n);
    for (const auto& rv : relvecs) {
        const auto& terms = grp[rv.src * n + rv.dst];
        for (std::size_t pre = 0; pre < paths.size(); ++pre) {
            if (paths[pre].dst != rv.src) continue;
            for (std::size_t post = 0; post < paths.size(); ++post) {
                if (paths[post].src != rv.dst) continue;
                const std::size_t total =
                    paths[pre].arrows.size() + rv.len + paths[post].arrows.size();
                if (total > q.nilpotency_bound) continue;
                const std::size_t s = paths[pre].src, t = paths[post].dst;
                std::vector<K> ext(grp[s * n + t].size(), K(0));
                for (std::size_t j = 0; j < rv.v.size(); ++j) {
                    if (rv.v[j] == K(0)) continue;
                    QPath w = paths[pre];
                    const QPath& mid = paths[terms[j]];
                    w.arrows.insert(w.arrows.end(), mid.arrows.begin(), mid.arrows.end());
                    const QPath& po = paths[post];
                    w.arrows.insert(w.arrows.end(), po.arrows.begin(), po.arrows.end());
                    w.dst = t;
                    ext[local_index(pindex.at(w))] += rv.v[j];
                }
                ideal[s * n + t].push_back(std::move(ext));
            }
        }
    }

    // Reduce each hom space: pivot paths die, the rest survive as basis.
    struct HomReduction {
        Matrix<K> rows;                    // RREF of the ideal piece
        std::vector<std::size_t> pivots;
        std::vector<std::size_t> basis;    // surviving path ids (global)
        std::map<std::size_t, std::size_t> basis_pos;  // global path id -> basis slot
    };
    std::vector<HomReduction> red(n * n);
    for (std::size_t st = 0; st < n * n; ++st) {
        const auto& g = grp[st];
        Matrix<K> m(ideal[st].size(), g.size());
        for (std::size_t i = 0; i < ideal[st].size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = ideal[st][i][j];
        auto rr = rref(m);
        red[st].rows = std::move(rr.r);
        red[st].pivots = std::move(rr.pivots);
        std::vector<bool> is_pivot(g.size(), false);
        for (std::size_t p : red[st].pivots) is_pivot[p] = true;
        for (std::size_t j = 0; j < g.size(); ++j)
            if (!is_pivot[j]) {
                red[st].basis_pos[g[j]] = red[st].basis.size();
                red[st].basis.push_back(g[j]);
            }
    }

    // Normal form of a single path in the quotient basis.
    auto reduce_path = [&](std::size_t pid) {
        const QPath& p = paths[pid];
        const std::size_t st = p.src * n + p.dst;
        const auto& g = grp[st];
        std::vector<K> v(g.size(), K(0));
        v[local_index(pid)] = K(1);
        const auto& rd = red[st];
        for (std::size_t j = 0; j < rd.pivots.size(); ++j) {
            const K c = v[rd.pivots[j]];
            if (c == K(0)) continue;
            for (std::size_t l = 0; l < g.size(); ++l) v[l] -= c * rd.rows(j, l);
        }
        std::vector<K> out(rd.basis.size(), K(0));
        for (std::size_t j = 0; j < g.size(); ++j)
            if (!(v[j] == K(0))) out[rd.basis_pos.at(g[j])] = v[j];
        return out;
    };

    // Finiteness: every path of maximal enumerated length must vanish.
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (paths[i].arrows.size() != q.nilpotency_bound) continue;
        for (const K& c : reduce_path(i))
            if (!(c == K(0)))
                throw LimitError("hom spaces not finite within nilpotency bound " +
                                 std::to_string(q.nilpotency_bound));
    }

    typename LinCat<K>::Data d;
    d.objects = q.vertices;
    d.hom_dim.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d.hom_dim[a][b] = red[a * n + b].basis.size();
    for (std::size_t a = 0; a < n; ++a) {
        const QPath triv{a, a, {}};
        std::vector<K> idc(d.hom_dim[a][a], K(0));
        const auto nf = reduce_path(pindex.at(triv));
        idc = nf;
        d.id.push_back(std::move(idc));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const std::size_t dab = d.hom_dim[a][b], dbc = d.hom_dim[b][c],
                                  dac = d.hom_dim[a][c];
                if (dab * dbc * dac == 0) continue;
                std::vector<K> t(dab * dbc * dac, K(0));
                for (std::size_t f = 0; f < dab; ++f)
                    for (std::size_t g = 0; g < dbc; ++g) {
                        const QPath& pf = paths[red[a * n + b].basis[f]];
                        const QPath& pg = paths[red[b * n + c].basis[g]];
                        QPath w = pf;
                        w.dst = pg.dst;
                        w.arrows.insert(w.arrows.end(), pg.arrows.begin(), pg.arrows.end());
                        if (w.arrows.size() > q.nilpotency_bound) continue;  // vanishes
                        const auto nf = reduce_path(pindex.at(w));
                        for (std::size_t k = 0; k < dac; ++k)
                            t[(f * dbc + g) * dac + k] = nf[k];
                    }
                d.comp[(a * n + b) * n + c] = std::move(t);
            }
    return LinCat<K>::make(std::move(d));
}

// ---------------------------------------------------------------------------
// Finite-dimensional algebras and their two-object Peirce categories

template <ExactField K>
struct Algebra {
    std::size_t dim = 0;
    std::vector<K> mult;  // mult[(i*dim+j)*dim+k]: e_i * e_j = sum_k mult[i][j][k] e_k
    std::vector<K> unit;

    static Algebra make(std::size_t dim, std::vector<K> mult, std::vector<K> unit) {
        if (mult.size() != dim * dim * dim) throw SchemaError("mult tensor has wrong size");
        if (unit.size() != dim) throw SchemaError("unit vector has wrong length");
        return Algebra{dim, std::move(mult), std::move(unit)};
    }

    std::vector<K> multiply(const std::vector<K>& x, const std::vector<K>& y) const {
        if (x.size() != dim || y.size() != dim) throw ShapeError("algebra element length");
        std::vector<K> z(dim, K(0));
        for (std::size_t i = 0; i < dim; ++i) {
            if (x[i] == K(0)) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (y[j] == K(0)) continue;
                const K c = x[i] * y[j];
                for (std::size_t k = 0; k < dim; ++k)
                    z[k] += c * mult[(i * dim + j) * dim + k];
            }
        }
        return z;
    }

    // x * (-) as a matrix.
    Matrix<K> left_mult(const std::vector<K>& x) const {
        Matrix<K> m(dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
            std::vector<K> ej(dim, K(0));
            ej[j] = K(1);
            const auto col = multiply(x, ej);
            for (std::size_t k = 0; k < dim; ++k) m(k, j) = col[k];
        }
        return m;
    }

    // (-) * x as a matrix.
    Matrix<K> right_mult(const std::vector<K>& x) const {
        Matrix<K> m(dim, dim);
        for (std::size_t j = 0; j < dim; ++j) {
            std::vector<K> ej(dim, K(0));
            ej[j] = K(1);
            const auto col = multiply(ej, x);
            for (std::size_t k = 0; k < dim; ++k) m(k, j) = col[k];
        }
        return m;
    }

    std::optional<std::string> validate() const {
        std::vector<std::vector<K>> basis(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            basis[i].assign(dim, K(0));
            basis[i][i] = K(1);
        }
        for (std::size_t i = 0; i < dim; ++i) {
            if (multiply(unit, basis[i]) != basis[i])
                return "unit law fails on the left at basis " + std::to_string(i);
            if (multiply(basis[i], unit) != basis[i])
                return "unit law fails on the right at basis " + std::to_string(i);
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t k = 0; k < dim; ++k)
                    if (multiply(multiply(basis[i], basis[j]), basis[k]) !=
                        multiply(basis[i], multiply(basis[j], basis[k])))
                        return "associativity fails at basis triple (" + std::to_string(i) +
                               "," + std::to_string(j) + "," + std::to_string(k) + ")";
        return std::nullopt;
    }
};

template <ExactField K>
struct AlgebraWithIdempotent {
    Algebra<K> alg;
    std::vector<K> idem;

    std::optional<std::string> validate() const {
        if (auto bad = alg.validate()) return bad;
        if (idem.size() != alg.dim) return std::optional<std::string>("idempotent length");
        if (alg.multiply(idem, idem) != idem)
            return std::optional<std::string>("element is not idempotent");
        return std::nullopt;
    }
};

// The two-object category on {e, 1-e}: objects E (image of e) and E* (image
// of 1-e), hom spaces the Peirce blocks, composition inherited from the
// algebra product.  hom(X, Y) is the block (1_Y) R (1_X) under left-module
// conventions, so hom(E, E) = eRe, hom(E, E*) = (1-e)Re, and the composite
// "g after f" is the product g*f in R.
template <ExactField K>
struct PeirceCategory {
    LinCatPtr<K> cat;        // objects "E", "E*"
    // basis[y][x]: dim R x hom_dim columns embedding hom(X, Y) into R
    Matrix<K> basis[2][2];
    AlgebraWithIdempotent<K> source;

    // Coordinates in hom(x, y) of an algebra element lying in that block.
    std::vector<K> to_block_coords(std::size_t y, std::size_t x,
                                   const std::vector<K>& elem) const {
        Matrix<K> col(elem.size(), 1);
        for (std::size_t i = 0; i < elem.size(); ++i) col(i, 0) = elem[i];
        const auto sol = solve(basis[y][x], col);
        if (!sol)
            throw ConsistencyError("algebra element does not lie in the requested block");
        std::vector<K> out(sol->rows());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*sol)(i, 0);
        return out;
    }

    std::vector<K> block_elem(std::size_t y, std::size_t x, const std::vector<K>& coords) const {
        Matrix<K> col(coords.size(), 1);
        for (std::size_t i = 0; i < coords.size(); ++i) col(i, 0) = coords[i];
        const Matrix<K> v = basis[y][x] * col;
        std::vector<K> out(v.rows());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = v(i, 0);
        return out;
    }
};

template <ExactField K>
PeirceCategory<K> peirce_category(const AlgebraWithIdempotent<K>& a) {
    if (auto bad = a.validate()) throw PreconditionError("bad algebra input: " + *bad);
    const Algebra<K>& R = a.alg;
    std::vector<K> e = a.idem;
    std::vector<K> f(R.dim);  // 1 - e
    for (std::size_t i = 0; i < R.dim; ++i) f[i] = R.unit[i] - e[i];

    const std::vector<K>* side[2] = {&e, &f};  // object 0 = E, object 1 = E*

    PeirceCategory<K> out;
    out.source = a;
    typename LinCat<K>::Data d;
    d.objects = {"E", "E*"};
    d.hom_dim.assign(2, std::vector<std::size_t>(2, 0));

    // hom(X, Y) = (1_Y) R (1_X); basis from the column space of the block
    // projector, deterministic via pivot columns.
    for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t x = 0; x < 2; ++x) {
            const Matrix<K> proj = R.left_mult(*side[y]) * R.right_mult(*side[x]);
            const auto dec = decompose(proj);
            out.basis[y][x] = dec.image_basis;
            d.hom_dim[x][y] = dec.rank;  // hom(x, y)
        }

    for (std::size_t x = 0; x < 2; ++x) {
        // id_X = 1_X viewed in hom(X, X)
        std::vector<K> idc = out.to_block_coords(x, x, *side[x]);
        d.id.push_back(std::move(idc));
    }

    auto col_of = [&](const Matrix<K>& m, std::size_t j) {
        std::vector<K> v(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
        return v;
    };

    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z) {
                const std::size_t dab = d.hom_dim[x][y], dbc = d.hom_dim[y][z],
                                  dac = d.hom_dim[x][z];
                if (dab * dbc * dac == 0) continue;
                std::vector<K> t(dab * dbc * dac, K(0));
                for (std::size_t ff = 0; ff < dab; ++ff)
                    for (std::size_t g = 0; g < dbc; ++g) {
                        // composite "g after f" = g * f in R
                        const auto prod = R.multiply(col_of(out.basis[z][y], g),
                                                     col_of(out.basis[y][x], ff));
                        const auto coords = out.to_block_coords(z, x, prod);
                        for (std::size_t k = 0; k < dac; ++k)
                            t[(ff * dbc + g) * dac + k] = coords[k];
                    }
                d.comp[(x * 2 + y) * 2 + z] = std::move(t);
            }
    out.cat = std::make_shared<const LinCat<K>>(LinCat<K>::make(std::move(d)));
    return out;
}

}  // namespace recollem
