#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lincat.hpp"
#include "matrix.hpp"

namespace recollem {

// A covariant functor C -> vect_k: a dimension per object and a matrix per
// hom basis element; act[(a,b)][i] is a dims[b] x dims[a] matrix.
template <ExactField K>
struct Rep {
    LinCatPtr<K> cat;
    std::vector<std::size_t> dims;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Matrix<K>>> act;

    std::size_t dim(std::size_t obj) const { return dims.at(obj); }

    std::size_t total_dim() const {
        std::size_t t = 0;
        for (std::size_t d : dims) t += d;
        return t;
    }

    bool is_zero() const {
        for (std::size_t d : dims)
            if (d) return false;
        return true;
    }

    const Matrix<K>& action(std::size_t a, std::size_t b, std::size_t i) const {
        const auto it = act.find({a, b});
        if (it == act.end()) throw LookupError("action not stored for hom pair");
        return it->second.at(i);
    }

    // Action of an arbitrary coordinate vector in hom(a,b).
    Matrix<K> action_of(std::size_t a, std::size_t b, const std::vector<K>& coords) const {
        if (coords.size() != cat->hom_dim(a, b))
            throw ShapeError("action coordinate length mismatch");
        Matrix<K> m(dims[b], dims[a]);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == K(0)) continue;
            m = m + coords[i] * action(a, b, i);
        }
        return m;
    }

    friend bool operator==(const Rep& x, const Rep& y) {
        return (x.cat == y.cat || *x.cat == *y.cat) && x.dims == y.dims && x.act == y.act;
    }
};

template <ExactField K>
bool same_cat(const LinCatPtr<K>& x, const LinCatPtr<K>& y) {
    return x == y || (x && y && *x == *y);
}

// Allocates the action table with zero matrices of the right shapes.
template <ExactField K>
Rep<K> make_zero_shaped_rep(LinCatPtr<K> cat, std::vector<std::size_t> dims) {
    Rep<K> x;
    x.cat = std::move(cat);
    x.dims = std::move(dims);
    const std::size_t n = x.cat->num_objects();
    if (x.dims.size() != n) throw ShapeError("rep dimension vector has wrong length");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t h = x.cat->hom_dim(a, b);
            if (h == 0) continue;
            x.act[{a, b}].assign(h, Matrix<K>(x.dims[b], x.dims[a]));
        }
    return x;
}

template <ExactField K>
Rep<K> zero_rep(LinCatPtr<K> cat) {
    const std::size_t n = cat ? cat->num_objects() : 0;
    return make_zero_shaped_rep<K>(std::move(cat), std::vector<std::size_t>(n, 0));
}

// Functoriality and unit law; nullopt when x is a genuine functor.
template <ExactField K>
std::optional<std::string> validate_rep(const Rep<K>& x) {
    const LinCat<K>& c = *x.cat;
    const std::size_t n = c.num_objects();
    if (x.dims.size() != n) return "dimension vector has wrong length";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t h = c.hom_dim(a, b);
            if (h == 0) continue;
            const auto it = x.act.find({a, b});
            if (it == x.act.end() || it->second.size() != h)
                return "missing action matrices for " + c.object_id(a) + "->" + c.object_id(b);
            for (const auto& m : it->second)
                if (m.rows() != x.dims[b] || m.cols() != x.dims[a])
                    return "action matrix shape mismatch at " + c.object_id(a) + "->" +
                           c.object_id(b);
        }
    for (std::size_t a = 0; a < n; ++a)
        if (x.action_of(a, a, c.identity_coords(a)) != Matrix<K>::identity(x.dims[a]))
            return "identity of " + c.object_id(a) + " does not act as the identity";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t f = 0; f < c.hom_dim(a, b); ++f)
                    for (std::size_t g = 0; g < c.hom_dim(b, cc); ++g) {
                        const auto gf =
                            c.compose(a, b, cc, c.basis_vector(a, b, f), c.basis_vector(b, cc, g));
                        if (x.action_of(a, cc, gf) != x.action(b, cc, g) * x.action(a, b, f))
                            return "functoriality fails at " + c.object_id(a) + "->" +
                                   c.object_id(b) + "#" + std::to_string(f) + " then " +
                                   c.object_id(b) + "->" + c.object_id(cc) + "#" +
                                   std::to_string(g);
                    }
    return std::nullopt;
}

// hom(obj, -) with the post-composition action.
template <ExactField K>
Rep<K> representable(LinCatPtr<K> cat, std::size_t obj) {
    const LinCat<K>& c = *cat;
    const std::size_t n = c.num_objects();
    if (obj >= n) throw LookupError("representable: object out of range");
    std::vector<std::size_t> dims(n);
    for (std::size_t b = 0; b < n; ++b) dims[b] = c.hom_dim(obj, b);
    Rep<K> x = make_zero_shaped_rep<K>(cat, std::move(dims));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) {
                // hom(obj,a) -> hom(obj,b): g |-> (basis_i after g)
                Matrix<K> m(c.hom_dim(obj, b), c.hom_dim(obj, a));
                for (std::size_t g = 0; g < c.hom_dim(obj, a); ++g)
                    for (std::size_t k = 0; k < c.hom_dim(obj, b); ++k)
                        m(k, g) = c.comp_coeff(obj, a, b, g, i, k);
                x.act[{a, b}][i] = std::move(m);
            }
    return x;
}

// A natural transformation; comps[a] maps src(a) -> dst(a).
template <ExactField K>
struct NatTrans {
    Rep<K> src, dst;
    std::vector<Matrix<K>> comps;

    const Matrix<K>& at(std::size_t obj) const { return comps.at(obj); }
};

template <ExactField K>
std::optional<std::string> validate_nat(const NatTrans<K>& t) {
    if (!same_cat(t.src.cat, t.dst.cat)) return "source and target live over different categories";
    const LinCat<K>& c = *t.src.cat;
    const std::size_t n = c.num_objects();
    if (t.comps.size() != n) return "component list has wrong length";
    for (std::size_t a = 0; a < n; ++a)
        if (t.comps[a].rows() != t.dst.dims[a] || t.comps[a].cols() != t.src.dims[a])
            return "component shape mismatch at " + c.object_id(a);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i)
                if (t.comps[b] * t.src.action(a, b, i) != t.dst.action(a, b, i) * t.comps[a])
                    return "naturality fails at " + c.object_id(a) + "->" + c.object_id(b) +
                           "#" + std::to_string(i);
    return std::nullopt;
}

template <ExactField K>
NatTrans<K> zero_nat(Rep<K> src, Rep<K> dst) {
    if (!same_cat(src.cat, dst.cat)) throw ShapeError("zero_nat across categories");
    NatTrans<K> t{std::move(src), std::move(dst), {}};
    for (std::size_t a = 0; a < t.src.cat->num_objects(); ++a)
        t.comps.emplace_back(t.dst.dims[a], t.src.dims[a]);
    return t;
}

template <ExactField K>
NatTrans<K> identity_nat(const Rep<K>& x) {
    NatTrans<K> t{x, x, {}};
    for (std::size_t d : x.dims) t.comps.push_back(Matrix<K>::identity(d));
    return t;
}

// g after f.
template <ExactField K>
NatTrans<K> compose_nat(const NatTrans<K>& f, const NatTrans<K>& g) {
    NatTrans<K> t{f.src, g.dst, {}};
    for (std::size_t a = 0; a < f.comps.size(); ++a) t.comps.push_back(g.comps[a] * f.comps[a]);
    return t;
}

template <ExactField K>
NatTrans<K> add_nat(const NatTrans<K>& f, const NatTrans<K>& g) {
    NatTrans<K> t{f.src, f.dst, {}};
    for (std::size_t a = 0; a < f.comps.size(); ++a) t.comps.push_back(f.comps[a] + g.comps[a]);
    return t;
}

template <ExactField K>
NatTrans<K> scale_nat(const K& c, const NatTrans<K>& f) {
    NatTrans<K> t{f.src, f.dst, {}};
    for (const auto& m : f.comps) t.comps.push_back(c * m);
    return t;
}

template <ExactField K>
NatTrans<K> negate_nat(const NatTrans<K>& f) {
    return scale_nat(K(-1), f);
}

template <ExactField K>
bool nat_is_zero(const NatTrans<K>& f) {
    for (const auto& m : f.comps)
        if (!m.is_zero()) return false;
    return true;
}

template <ExactField K>
bool nat_is_iso(const NatTrans<K>& f) {
    for (std::size_t a = 0; a < f.comps.size(); ++a)
        if (f.comps[a].rows() != f.comps[a].cols() || rank(f.comps[a]) != f.comps[a].rows())
            return false;
    return true;
}

// The space of natural transformations x => y, i.e. the end of hom(x(-), y(-)):
// the kernel of the stacked naturality constraints.  The basis is canonical
// (reduced echelon kernel of a deterministically assembled system).
template <ExactField K>
std::vector<NatTrans<K>> hom_space(const Rep<K>& x, const Rep<K>& y) {
    if (!same_cat(x.cat, y.cat)) throw ShapeError("hom_space across categories");
    const LinCat<K>& c = *x.cat;
    const std::size_t n = c.num_objects();

    // unknown layout: vec(t_0) | vec(t_1) | ... (row-major components)
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::size_t a = 0; a < n; ++a)
        offset[a + 1] = offset[a] + y.dims[a] * x.dims[a];
    const std::size_t unknowns = offset[n];

    std::vector<Matrix<K>> blocks;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) {
                // t_b * x(e) - y(e) * t_a = 0, vectorized row-major:
                // (I (x) x(e)^T) vec(t_b) - (y(e) (x) I) vec(t_a) = 0
                const Matrix<K> lhs = kron(Matrix<K>::identity(y.dims[b]),
                                           x.action(a, b, i).transpose());
                const Matrix<K> rhs = kron(y.action(a, b, i), Matrix<K>::identity(x.dims[a]));
                Matrix<K> row(lhs.rows(), unknowns);
                for (std::size_t r = 0; r < lhs.rows(); ++r) {
                    for (std::size_t cc = 0; cc < lhs.cols(); ++cc)
                        row(r, offset[b] + cc) = lhs(r, cc);
                    for (std::size_t cc = 0; cc < rhs.cols(); ++cc)
                        row(r, offset[a] + cc) = row(r, offset[a] + cc) - rhs(r, cc);
                }
                blocks.push_back(std::move(row));
            }
    Matrix<K> system = blocks.empty() ? Matrix<K>(0, unknowns) : vstack(blocks);
    const auto dec = decompose(system);

    std::vector<NatTrans<K>> basis;
    for (std::size_t j = 0; j < dec.kernel_basis.cols(); ++j) {
        NatTrans<K> t{x, y, {}};
        for (std::size_t a = 0; a < n; ++a) {
            Matrix<K> m(y.dims[a], x.dims[a]);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t cc = 0; cc < m.cols(); ++cc)
                    m(r, cc) = dec.kernel_basis(offset[a] + r * m.cols() + cc, j);
            t.comps.push_back(std::move(m));
        }
        basis.push_back(std::move(t));
    }
    return basis;
}

// Coordinates of a natural transformation in a given hom_space basis.
template <ExactField K>
std::vector<K> nat_coords(const std::vector<NatTrans<K>>& basis, const NatTrans<K>& t) {
    std::size_t len = 0;
    for (const auto& m : t.comps) len += m.rows() * m.cols();
    Matrix<K> sys(len, basis.size());
    Matrix<K> rhs(len, 1);
    std::size_t row = 0;
    for (std::size_t a = 0; a < t.comps.size(); ++a)
        for (std::size_t r = 0; r < t.comps[a].rows(); ++r)
            for (std::size_t cc = 0; cc < t.comps[a].cols(); ++cc) {
                for (std::size_t j = 0; j < basis.size(); ++j)
                    sys(row, j) = basis[j].comps[a](r, cc);
                rhs(row, 0) = t.comps[a](r, cc);
                ++row;
            }
    const auto sol = solve(sys, rhs);
    if (!sol) throw ConsistencyError("transformation does not lie in the span of the basis");
    std::vector<K> out(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) out[j] = (*sol)(j, 0);
    return out;
}

template <ExactField K>
struct SubobjectResult {
    Rep<K> rep;
    NatTrans<K> map;  // kernel: rep -> src of f; cokernel: dst of f -> rep
};

// Pointwise kernel with the induced action.
template <ExactField K>
SubobjectResult<K> kernel(const NatTrans<K>& f) {
    const LinCat<K>& c = *f.src.cat;
    const std::size_t n = c.num_objects();
    std::vector<Matrix<K>> incl(n);
    std::vector<std::size_t> dims(n);
    for (std::size_t a = 0; a < n; ++a) {
        incl[a] = decompose(f.comps[a]).kernel_basis;
        dims[a] = incl[a].cols();
    }
    Rep<K> ker = make_zero_shaped_rep<K>(f.src.cat, dims);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) {
                const auto sol = solve(incl[b], f.src.action(a, b, i) * incl[a]);
                if (!sol) throw ConsistencyError("kernel is not closed under the action");
                ker.act[{a, b}][i] = *sol;
            }
    NatTrans<K> j{ker, f.src, incl};
    return {std::move(ker), std::move(j)};
}

// Pointwise cokernel with the induced action.
template <ExactField K>
SubobjectResult<K> cokernel(const NatTrans<K>& f) {
    const LinCat<K>& c = *f.dst.cat;
    const std::size_t n = c.num_objects();
    std::vector<Matrix<K>> proj(n);
    std::vector<std::size_t> dims(n);
    for (std::size_t a = 0; a < n; ++a) {
        proj[a] = decompose(f.comps[a]).cokernel_projection;
        dims[a] = proj[a].rows();
    }
    Rep<K> cok = make_zero_shaped_rep<K>(f.dst.cat, dims);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) {
                // unique q with q * proj_a = proj_b * y(e); proj_a has full row rank
                const auto sol = solve(proj[a].transpose(),
                                       (proj[b] * f.dst.action(a, b, i)).transpose());
                if (!sol) throw ConsistencyError("cokernel action is not induced");
                cok.act[{a, b}][i] = sol->transpose();
            }
    NatTrans<K> p{f.dst, cok, proj};
    return {std::move(cok), std::move(p)};
}

template <ExactField K>
struct DirectSumResult {
    Rep<K> rep;
    std::vector<NatTrans<K>> inject;
    std::vector<NatTrans<K>> project;
};

template <ExactField K>
DirectSumResult<K> direct_sum_reps(const std::vector<Rep<K>>& parts) {
    if (parts.empty()) throw PreconditionError("direct sum needs at least one summand");
    const LinCat<K>& c = *parts.front().cat;
    const std::size_t n = c.num_objects();
    std::vector<std::size_t> dims(n, 0);
    for (const auto& p : parts) {
        if (!same_cat(p.cat, parts.front().cat)) throw ShapeError("direct sum across categories");
        for (std::size_t a = 0; a < n; ++a) dims[a] += p.dims[a];
    }
    Rep<K> sum = make_zero_shaped_rep<K>(parts.front().cat, dims);
    DirectSumResult<K> out;
    std::vector<std::vector<std::size_t>> offsets;  // per part, per object
    {
        std::vector<std::size_t> off(n, 0);
        for (const auto& p : parts) {
            offsets.push_back(off);
            for (std::size_t a = 0; a < n; ++a) off[a] += p.dims[a];
        }
    }
    for (std::size_t pi = 0; pi < parts.size(); ++pi)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) {
                    auto& m = sum.act[{a, b}][i];
                    const auto& pm = parts[pi].action(a, b, i);
                    for (std::size_t r = 0; r < pm.rows(); ++r)
                        for (std::size_t cc = 0; cc < pm.cols(); ++cc)
                            m(offsets[pi][b] + r, offsets[pi][a] + cc) = pm(r, cc);
                }
    out.rep = sum;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        NatTrans<K> in{parts[pi], sum, {}}, pr{sum, parts[pi], {}};
        for (std::size_t a = 0; a < n; ++a) {
            Matrix<K> im(sum.dims[a], parts[pi].dims[a]);
            Matrix<K> pm(parts[pi].dims[a], sum.dims[a]);
            for (std::size_t r = 0; r < parts[pi].dims[a]; ++r) {
                im(offsets[pi][a] + r, r) = K(1);
                pm(r, offsets[pi][a] + r) = K(1);
            }
            in.comps.push_back(std::move(im));
            pr.comps.push_back(std::move(pm));
        }
        out.inject.push_back(std::move(in));
        out.project.push_back(std::move(pr));
    }
    return out;
}

// x (x) k^m: multiplies every dimension by m, action = kron with the identity.
template <ExactField K>
Rep<K> oslash(const Rep<K>& x, std::size_t m) {
    std::vector<std::size_t> dims(x.dims);
    for (auto& d : dims) d *= m;
    Rep<K> r = make_zero_shaped_rep<K>(x.cat, dims);
    const LinCat<K>& c = *x.cat;
    for (std::size_t a = 0; a < c.num_objects(); ++a)
        for (std::size_t b = 0; b < c.num_objects(); ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i)
                r.act[{a, b}][i] = kron(x.action(a, b, i), Matrix<K>::identity(m));
    return r;
}

// The transformation hom(a,-) => x determined by an element of x(a).
template <ExactField K>
NatTrans<K> yoneda_transform(const Rep<K>& x, std::size_t a, const std::vector<K>& v) {
    const LinCat<K>& c = *x.cat;
    if (v.size() != x.dims[a]) throw ShapeError("yoneda element has wrong length");
    Matrix<K> vcol(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) vcol(i, 0) = v[i];
    NatTrans<K> t{representable(x.cat, a), x, {}};
    for (std::size_t b = 0; b < c.num_objects(); ++b) {
        Matrix<K> m(x.dims[b], c.hom_dim(a, b));
        for (std::size_t f = 0; f < c.hom_dim(a, b); ++f) {
            const Matrix<K> col = x.action(a, b, f) * vcol;
            for (std::size_t r = 0; r < m.rows(); ++r) m(r, f) = col(r, 0);
        }
        t.comps.push_back(std::move(m));
    }
    return t;
}

template <ExactField K>
struct YonedaIso {
    std::vector<NatTrans<K>> hom_basis;  // basis of hom_space(hom(a,-), x)
    Matrix<K> to_elem;    // coordinates in hom_basis -> x(a)
    Matrix<K> from_elem;  // x(a) -> coordinates in hom_basis
};

// The natural identification x(a) = Nat(hom(a,-), x), with explicit mutually
// inverse matrices.  Fails with ConsistencyError only on invalid rep data.
template <ExactField K>
YonedaIso<K> yoneda_iso(const Rep<K>& x, std::size_t a) {
    YonedaIso<K> out;
    out.hom_basis = hom_space(representable(x.cat, a), x);
    const std::size_t m = out.hom_basis.size();
    out.to_elem = Matrix<K>(x.dims[a], m);
    const auto& idc = x.cat->identity_coords(a);
    for (std::size_t j = 0; j < m; ++j) {
        Matrix<K> idcol(idc.size(), 1);
        for (std::size_t i = 0; i < idc.size(); ++i) idcol(i, 0) = idc[i];
        const Matrix<K> v = out.hom_basis[j].comps[a] * idcol;
        for (std::size_t r = 0; r < x.dims[a]; ++r) out.to_elem(r, j) = v(r, 0);
    }
    if (m != x.dims[a])
        throw ConsistencyError("hom space from the representable has the wrong dimension");
    const auto inv = solve(out.to_elem, Matrix<K>::identity(m));
    if (!inv || out.to_elem * *inv != Matrix<K>::identity(m))
        throw ConsistencyError("evaluation at the identity is not invertible");
    out.from_elem = *inv;
    return out;
}

}  // namespace recollem
