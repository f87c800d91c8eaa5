#pragma once
// Bounded chain complexes of representations: homology with induced actions,
// cones, shifts, projective and injective resolutions built from representable
// covers, and derived hom.  Homological convention throughout: the
// differential lowers degree.  Shifting by n scales differentials by (-1)^n.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recollem/rep.hpp"
#include "recollem/report.hpp"

namespace recollem {

// Finite support; absent degrees are zero.  diff[n] maps term(n) to term(n-1).
template <ExactField K>
struct Complex {
    LinCatPtr<K> cat;
    std::map<int, Rep<K>> terms;
    std::map<int, NatTrans<K>> diff;

    Rep<K> term(int n) const {
        const auto it = terms.find(n);
        return it != terms.end() ? it->second : zero_rep<K>(cat);
    }
    NatTrans<K> d(int n) const {
        const auto it = diff.find(n);
        return it != diff.end() ? it->second : zero_nat(term(n), term(n - 1));
    }
    std::size_t total_dim() const {
        std::size_t s = 0;
        for (const auto& [n, t] : terms) s += t.total_dim();
        return s;
    }
};

template <ExactField K>
std::optional<std::string> validate_complex(const Complex<K>& x) {
    if (!x.cat) return std::optional<std::string>("missing category");
    for (const auto& [n, t] : x.terms) {
        if (!same_cat(t.cat, x.cat))
            return "term at degree " + std::to_string(n) + " lives over a different category";
        if (auto bad = validate_rep(t))
            return "term at degree " + std::to_string(n) + ": " + *bad;
    }
    for (const auto& [n, t] : x.diff) {
        if (!same_cat(t.src.cat, x.cat))
            return "differential at degree " + std::to_string(n) +
                   " lives over a different category";
        if (t.src.dims != x.term(n).dims || t.dst.dims != x.term(n - 1).dims)
            return "differential at degree " + std::to_string(n) + " has the wrong shape";
        if (auto bad = validate_nat(t))
            return "differential at degree " + std::to_string(n) + ": " + *bad;
    }
    for (const auto& [n, t] : x.diff) {
        if (!x.diff.count(n - 1)) continue;
        const NatTrans<K>& s = x.diff.at(n - 1);
        for (std::size_t a = 0; a < t.comps.size(); ++a)
            if (!(s.comps[a] * t.comps[a]).is_zero())
                return "d*d is nonzero at degree " + std::to_string(n);
    }
    return std::nullopt;
}

// Drops zero terms and zero-shaped differentials.
template <ExactField K>
Complex<K> trim(const Complex<K>& x) {
    Complex<K> out;
    out.cat = x.cat;
    for (const auto& [n, t] : x.terms)
        if (t.total_dim() > 0) out.terms.emplace(n, t);
    for (const auto& [n, t] : x.diff)
        if (t.src.total_dim() > 0 && t.dst.total_dim() > 0) out.diff.emplace(n, t);
    return out;
}

template <ExactField K>
Complex<K> make_complex(LinCatPtr<K> cat, std::map<int, Rep<K>> terms,
                        std::map<int, NatTrans<K>> diff) {
    Complex<K> x{std::move(cat), std::move(terms), std::move(diff)};
    if (auto bad = validate_complex(x)) throw ConsistencyError("bad complex: " + *bad);
    return x;
}

template <ExactField K>
Complex<K> complex_of(const Rep<K>& x, int degree = 0) {
    Complex<K> out;
    out.cat = x.cat;
    out.terms.emplace(degree, x);
    return out;
}

// Degree window covering the support; {0, -1} when empty.
template <ExactField K>
std::pair<int, int> support(const Complex<K>& x) {
    int lo = 0, hi = -1;
    bool seen = false;
    for (const auto& [n, t] : x.terms) {
        if (t.total_dim() == 0) continue;
        if (!seen || n < lo) lo = n;
        if (!seen || n > hi) hi = n;
        seen = true;
    }
    return {lo, hi};
}

template <ExactField K>
Complex<K> shift(const Complex<K>& x, int n) {
    Complex<K> out;
    out.cat = x.cat;
    for (const auto& [k, t] : x.terms) out.terms.emplace(k + n, t);
    for (const auto& [k, t] : x.diff)
        out.diff.emplace(k + n, (n % 2 == 0) ? t : scale_nat(K(-1), t));
    return out;
}

template <ExactField K>
struct ChainMap {
    Complex<K> src, dst;
    std::map<int, NatTrans<K>> comps;

    NatTrans<K> comp(int n) const {
        const auto it = comps.find(n);
        return it != comps.end() ? it->second : zero_nat(src.term(n), dst.term(n));
    }
};

template <ExactField K>
std::optional<std::string> validate_chain_map(const ChainMap<K>& f) {
    for (const auto& [n, t] : f.comps) {
        if (t.src.dims != f.src.term(n).dims || t.dst.dims != f.dst.term(n).dims)
            return "component at degree " + std::to_string(n) + " has the wrong shape";
        if (auto bad = validate_nat(t))
            return "component at degree " + std::to_string(n) + ": " + *bad;
    }
    const auto [slo, shi] = support(f.src);
    const auto [dlo, dhi] = support(f.dst);
    for (int n = std::min(slo, dlo); n <= std::max(shi, dhi) + 1; ++n) {
        if (slo > shi && dlo > dhi) break;
        const auto lhs = compose_nat(f.comp(n), f.dst.d(n));   // d after f_n
        const auto rhs = compose_nat(f.src.d(n), f.comp(n - 1));
        for (std::size_t a = 0; a < lhs.comps.size(); ++a)
            if (lhs.comps[a] != rhs.comps[a])
                return "does not commute with d at degree " + std::to_string(n);
    }
    return std::nullopt;
}

template <ExactField K>
ChainMap<K> identity_chain_map(const Complex<K>& x) {
    ChainMap<K> f{x, x, {}};
    for (const auto& [n, t] : x.terms)
        if (t.total_dim() > 0) f.comps.emplace(n, identity_nat(t));
    return f;
}

template <ExactField K>
ChainMap<K> zero_chain_map(const Complex<K>& src, const Complex<K>& dst) {
    return ChainMap<K>{src, dst, {}};
}

// "g after f"; degrees where f stores no component compose to zero anyway.
template <ExactField K>
ChainMap<K> compose_chain_maps(const ChainMap<K>& f, const ChainMap<K>& g) {
    ChainMap<K> out{f.src, g.dst, {}};
    for (const auto& [n, t] : f.comps) out.comps.emplace(n, compose_nat(t, g.comp(n)));
    return out;
}

// Lift of f through g up to homotopy: g o w - f = d o h + h o d.
template <ExactField K>
struct ChainLift {
    ChainMap<K> w;                        // f.src -> g.src, a chain map
    std::map<int, NatTrans<K>> homotopy;  // h_n: f.src term n -> target term n+1
};

// Solves for a chain map w: A -> B and a homotopy h with g w - f = dh + hd,
// given f: A -> Z and g: B -> Z into a shared target.  The chain condition on
// w and the homotopy condition are one affine system over the hom-space bases,
// so a lift is found exactly when one exists.
template <ExactField K>
std::optional<ChainLift<K>> chain_lift(const ChainMap<K>& f, const ChainMap<K>& g) {
    const Complex<K>& A = f.src;
    const Complex<K>& B = g.src;
    const Complex<K>& Z = f.dst;
    const std::size_t m = A.cat->num_objects();
    for (const auto& [n, t] : f.dst.terms)
        if (t.dims != g.dst.term(n).dims)
            throw PreconditionError("chain_lift targets disagree at degree " + std::to_string(n));
    for (const auto& [n, t] : g.dst.terms)
        if (t.dims != f.dst.term(n).dims)
            throw PreconditionError("chain_lift targets disagree at degree " + std::to_string(n));

    ChainLift<K> out;
    out.w = ChainMap<K>{A, B, {}};
    const auto [alo, ahi] = support(A);
    if (alo > ahi) return out;

    std::map<int, std::vector<NatTrans<K>>> wb, hb;
    std::map<int, std::size_t> woff, hoff;
    std::size_t cols = 0;
    for (int n = alo; n <= ahi; ++n) {
        wb.emplace(n, hom_space(A.term(n), B.term(n)));
        woff[n] = cols;
        cols += wb.at(n).size();
        hb.emplace(n, hom_space(A.term(n), Z.term(n + 1)));
        hoff[n] = cols;
        cols += hb.at(n).size();
    }

    const auto flat_size = [&](const Rep<K>& src, const Rep<K>& dst) {
        std::size_t s = 0;
        for (std::size_t a = 0; a < m; ++a) s += dst.dims[a] * src.dims[a];
        return s;
    };
    std::size_t rows = 0;
    std::map<int, std::size_t> chain_row, homot_row;
    for (int n = alo; n <= ahi; ++n) {
        chain_row[n] = rows;
        rows += flat_size(A.term(n), B.term(n - 1));
        homot_row[n] = rows;
        rows += flat_size(A.term(n), Z.term(n));
    }

    Matrix<K> mat(rows, cols);
    Matrix<K> rhs(rows, 1);
    const auto put = [&](std::size_t row0, std::size_t col, const NatTrans<K>& t, const K& c) {
        std::size_t r = row0;
        for (const auto& blk : t.comps)
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j, ++r)
                    mat(r, col) = mat(r, col) + c * blk(i, j);
    };
    for (int n = alo; n <= ahi; ++n) {
        for (std::size_t j = 0; j < wb.at(n).size(); ++j) {
            const NatTrans<K>& beta = wb.at(n)[j];
            put(chain_row.at(n), woff.at(n) + j, compose_nat(beta, B.d(n)), K(1));
            put(homot_row.at(n), woff.at(n) + j, compose_nat(beta, g.comp(n)), K(1));
            if (n + 1 <= ahi)
                put(chain_row.at(n + 1), woff.at(n) + j, compose_nat(A.d(n + 1), beta), K(-1));
        }
        for (std::size_t j = 0; j < hb.at(n).size(); ++j) {
            const NatTrans<K>& gamma = hb.at(n)[j];
            put(homot_row.at(n), hoff.at(n) + j, compose_nat(gamma, Z.d(n + 1)), K(-1));
            if (n + 1 <= ahi)
                put(homot_row.at(n + 1), hoff.at(n) + j, compose_nat(A.d(n + 1), gamma), K(-1));
        }
        const NatTrans<K> fn = f.comp(n);
        std::size_t r = homot_row.at(n);
        for (const auto& blk : fn.comps)
            for (std::size_t i = 0; i < blk.rows(); ++i)
                for (std::size_t j = 0; j < blk.cols(); ++j, ++r) rhs(r, 0) = blk(i, j);
    }

    const auto sol = solve(mat, rhs);
    if (!sol) return std::nullopt;

    const auto combine = [&](const std::vector<NatTrans<K>>& basis, std::size_t off,
                             const Rep<K>& src, const Rep<K>& dst) {
        NatTrans<K> t = zero_nat(src, dst);
        for (std::size_t j = 0; j < basis.size(); ++j)
            t = add_nat(t, scale_nat((*sol)(off + j, 0), basis[j]));
        return t;
    };
    for (int n = alo; n <= ahi; ++n) {
        out.w.comps.emplace(n, combine(wb.at(n), woff.at(n), A.term(n), B.term(n)));
        out.homotopy.emplace(n, combine(hb.at(n), hoff.at(n), A.term(n), Z.term(n + 1)));
    }
    if (auto bad = validate_chain_map(out.w)) throw ConsistencyError("chain_lift: " + *bad);
    for (int n = alo; n <= ahi; ++n) {
        const auto lhs = add_nat(compose_nat(out.w.comp(n), g.comp(n)),
                                 scale_nat(K(-1), f.comp(n)));
        const auto dh = compose_nat(out.homotopy.at(n), Z.d(n + 1));
        const auto hd = (n - 1 >= alo) ? compose_nat(A.d(n), out.homotopy.at(n - 1))
                                       : zero_nat(A.term(n), Z.term(n));
        const auto r = add_nat(lhs, scale_nat(K(-1), add_nat(dh, hd)));
        for (const auto& blk : r.comps)
            if (!blk.is_zero()) throw ConsistencyError("chain_lift: homotopy identity fails");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Homology

// Cycles in pivot coordinates plus the quotient projection onto homology.
template <ExactField K>
struct HomologyData {
    Rep<K> rep;
    std::vector<Matrix<K>> cycles;  // columns span ker d_n at each object
    std::vector<Matrix<K>> proj;    // cycle coordinates -> homology coordinates
};

template <ExactField K>
HomologyData<K> homology_data(const Complex<K>& x, int n) {
    const Rep<K> xn = x.term(n);
    const NatTrans<K> dn = x.d(n), up = x.d(n + 1);
    const LinCat<K>& c = *x.cat;
    const std::size_t m = c.num_objects();

    HomologyData<K> out;
    std::vector<std::size_t> dims(m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        Matrix<K> z = decompose(dn.comps[a]).kernel_basis;
        const auto bz = solve(z, decompose(up.comps[a]).image_basis);
        if (!bz) throw ConsistencyError("boundaries are not cycles");
        out.proj.push_back(decompose(*bz).cokernel_projection);
        out.cycles.push_back(std::move(z));
        dims[a] = out.proj.back().rows();
    }
    out.rep = make_zero_shaped_rep<K>(x.cat, dims);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i) {
                const auto zg = solve(out.cycles[b], xn.action(a, b, i) * out.cycles[a]);
                if (!zg) throw ConsistencyError("action does not preserve cycles");
                const auto h = solve(out.proj[a].transpose(), (out.proj[b] * (*zg)).transpose());
                if (!h) throw ConsistencyError("action does not preserve boundaries");
                out.rep.act[{a, b}][i] = h->transpose();
            }
    return out;
}

template <ExactField K>
Rep<K> homology(const Complex<K>& x, int n) {
    return homology_data(x, n).rep;
}

// Map induced on homology by degreewise matrices that send cycles to cycles
// and boundaries to boundaries.
template <ExactField K>
NatTrans<K> induced_on_homology(const std::vector<Matrix<K>>& comps,
                                const HomologyData<K>& from, const HomologyData<K>& to) {
    NatTrans<K> t{from.rep, to.rep, {}};
    for (std::size_t a = 0; a < comps.size(); ++a) {
        const auto z = solve(to.cycles[a], comps[a] * from.cycles[a]);
        if (!z) throw ConsistencyError("map does not preserve cycles");
        const auto h = solve(from.proj[a].transpose(), (to.proj[a] * (*z)).transpose());
        if (!h) throw ConsistencyError("map does not preserve boundaries");
        t.comps.push_back(h->transpose());
    }
    return t;
}

template <ExactField K>
NatTrans<K> homology_map(const ChainMap<K>& f, int n, const HomologyData<K>& hsrc,
                         const HomologyData<K>& hdst) {
    return induced_on_homology(f.comp(n).comps, hsrc, hdst);
}

// Homology vanishes everywhere: dim = rank(d in) + rank(d out) per object,
// valid because boundaries are cycles.
template <ExactField K>
bool is_acyclic(const Complex<K>& x) {
    const auto [lo, hi] = support(x);
    for (int n = lo; n <= hi; ++n)
        for (std::size_t a = 0; a < x.cat->num_objects(); ++a)
            if (x.term(n).dims[a] != rank(x.d(n).comps[a]) + rank(x.d(n + 1).comps[a]))
                return false;
    return true;
}

template <ExactField K>
bool is_quasi_iso(const ChainMap<K>& f) {
    const auto [slo, shi] = support(f.src);
    const auto [dlo, dhi] = support(f.dst);
    if (slo > shi && dlo > dhi) return true;
    const int lo = (slo > shi) ? dlo : (dlo > dhi ? slo : std::min(slo, dlo));
    const int hi = (slo > shi) ? dhi : (dlo > dhi ? shi : std::max(shi, dhi));
    for (int n = lo; n <= hi; ++n) {
        const auto hs = homology_data(f.src, n);
        const auto hd = homology_data(f.dst, n);
        if (hs.rep.dims != hd.rep.dims) return false;
        if (!nat_is_iso(homology_map(f, n, hs, hd))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Cones

template <ExactField K>
struct ConeResult {
    Complex<K> cx;     // C_n = Y_n (+) X_{n-1}, d(y, x) = (dy + fx, -dx)
    ChainMap<K> incl;  // Y -> C
    ChainMap<K> onto;  // C -> X[1] (sign convention of shift)
};

template <ExactField K>
ConeResult<K> cone_with_maps(const ChainMap<K>& f) {
    const Complex<K>& X = f.src;
    const Complex<K>& Y = f.dst;
    const LinCat<K>& c = *X.cat;
    const std::size_t m = c.num_objects();

    const auto [xlo, xhi] = support(X);
    const auto [ylo, yhi] = support(Y);
    const bool xe = xlo > xhi, ye = ylo > yhi;

    ConeResult<K> out;
    out.cx.cat = X.cat;
    out.incl = ChainMap<K>{Y, out.cx, {}};
    out.onto = ChainMap<K>{out.cx, shift(X, 1), {}};
    if (xe && ye) return out;

    const int lo = std::min(xe ? ylo : xlo + 1, ye ? xlo + 1 : ylo);
    const int hi = std::max(xe ? yhi : xhi + 1, ye ? xhi + 1 : yhi);

    std::map<int, DirectSumResult<K>> sums;
    for (int n = lo; n <= hi; ++n)
        sums.emplace(n, direct_sum_reps<K>({Y.term(n), X.term(n - 1)}));
    for (int n = lo; n <= hi; ++n) {
        const auto& s = sums.at(n);
        out.cx.terms.emplace(n, s.rep);
        out.incl.comps.emplace(n, s.inject[0]);
        out.onto.comps.emplace(n, s.project[1]);
        if (!sums.count(n - 1)) continue;
        const auto& t = sums.at(n - 1);
        const NatTrans<K> dy = Y.d(n), dx = X.d(n - 1), fm = f.comp(n - 1);
        NatTrans<K> dn = zero_nat(s.rep, t.rep);
        for (std::size_t a = 0; a < m; ++a)
            dn.comps[a] =
                t.inject[0].comps[a] *
                    (dy.comps[a] * s.project[0].comps[a] + fm.comps[a] * s.project[1].comps[a]) -
                t.inject[1].comps[a] * dx.comps[a] * s.project[1].comps[a];
        out.cx.diff.emplace(n, std::move(dn));
    }
    out.incl.src = Y;
    out.incl.dst = out.cx;
    out.onto.src = out.cx;
    out.onto.dst = shift(X, 1);
    return out;
}

template <ExactField K>
Complex<K> cone(const ChainMap<K>& f) {
    return cone_with_maps(f).cx;
}

// Long exact sequence of the cone, verified by exact rank arithmetic.
template <ExactField K>
CheckReport cone_les_check(const ChainMap<K>& f) {
    const auto cw = cone_with_maps(f);
    CheckReport report;
    const auto [xlo, xhi] = support(f.src);
    const auto [ylo, yhi] = support(f.dst);
    const auto [clo, chi] = support(cw.cx);
    if (xlo > xhi && ylo > yhi) {
        report.add("les", true, "");
        return report;
    }
    const int lo = std::min({xlo > xhi ? clo : xlo, ylo > yhi ? clo : ylo, clo}) - 1;
    const int hi = std::max({xlo > xhi ? chi : xhi + 1, ylo > yhi ? chi : yhi, chi}) + 1;

    std::map<int, HomologyData<K>> hx, hy, hc;
    for (int n = lo - 1; n <= hi; ++n) {
        hx.emplace(n, homology_data(f.src, n));
        hy.emplace(n, homology_data(f.dst, n));
        hc.emplace(n, homology_data(cw.cx, n));
    }
    // exactness of M_in --in--> M --out--> M_out: ranks add up and out*in = 0
    const auto exact_at = [&](const NatTrans<K>& in, const NatTrans<K>& out_map,
                              const std::string& label) {
        bool ok = true;
        for (std::size_t a = 0; a < in.comps.size() && ok; ++a) {
            const std::size_t mid = in.dst.dims[a];
            ok = (out_map.comps[a] * in.comps[a]).is_zero() &&
                 rank(in.comps[a]) + rank(out_map.comps[a]) == mid;
        }
        report.add(label, ok, label);
    };
    for (int n = lo; n <= hi; ++n) {
        const auto a_n = homology_map(f, n, hx.at(n), hy.at(n));
        const auto b_n = homology_map(cw.incl, n, hy.at(n), hc.at(n));
        // connecting map: the X[1]-projection sends cycles of C into cycles of X
        const auto del_n = induced_on_homology(cw.onto.comp(n).comps, hc.at(n), hx.at(n - 1));
        exact_at(a_n, b_n, "les_at_target deg " + std::to_string(n));
        exact_at(b_n, del_n, "les_at_cone deg " + std::to_string(n));
        if (n > lo) {
            const auto a_prev = homology_map(f, n - 1, hx.at(n - 1), hy.at(n - 1));
            exact_at(del_n, a_prev, "les_at_source deg " + std::to_string(n - 1));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Resolutions

// Greedy representable cover: scan objects in order, adopt every basis vector
// not yet reachable, then drop generators made redundant by later picks.
// Surjective by construction; a representable is covered by its identity.
template <ExactField K>
struct Cover {
    Rep<K> proj;                    // finite direct sum of representables
    std::vector<std::size_t> gens;  // chosen objects in summand order
    NatTrans<K> map;                // proj -> x, surjective
};

template <ExactField K>
Cover<K> representable_cover(const Rep<K>& x) {
    const LinCat<K>& c = *x.cat;
    const std::size_t m = c.num_objects();
    Cover<K> out;
    std::vector<Matrix<K>> image;
    for (std::size_t a = 0; a < m; ++a) image.emplace_back(x.dims[a], 0);

    std::vector<NatTrans<K>> pieces;
    std::vector<std::size_t> gens;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t v = 0; v < x.dims[a]; ++v) {
            Matrix<K> col(x.dims[a], 1);
            col(v, 0) = K(1);
            if (solve(image[a], col)) continue;
            std::vector<K> e(x.dims[a], K(0));
            e[v] = K(1);
            auto t = yoneda_transform(x, a, e);
            for (std::size_t b = 0; b < m; ++b)
                image[b] = hstack(std::vector<Matrix<K>>{image[b], t.comps[b]});
            gens.push_back(a);
            pieces.push_back(std::move(t));
        }
    std::vector<bool> keep(pieces.size(), true);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        keep[i] = false;
        bool spans = true;
        for (std::size_t b = 0; b < m && spans; ++b) {
            std::vector<Matrix<K>> cols;
            for (std::size_t j = 0; j < pieces.size(); ++j)
                if (keep[j]) cols.push_back(pieces[j].comps[b]);
            cols.emplace_back(x.dims[b], 0);
            spans = rank(hstack(cols)) == x.dims[b];
        }
        if (!spans) keep[i] = true;
    }
    std::vector<NatTrans<K>> kept;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        if (keep[i]) {
            out.gens.push_back(gens[i]);
            kept.push_back(std::move(pieces[i]));
        }
    pieces = std::move(kept);

    if (out.gens.empty()) {
        out.proj = zero_rep<K>(x.cat);
        out.map = zero_nat(out.proj, x);
        return out;
    }
    std::vector<Rep<K>> parts;
    for (const auto g : out.gens) parts.push_back(representable<K>(x.cat, g));
    out.proj = direct_sum_reps(parts).rep;
    NatTrans<K> t{out.proj, x, {}};
    for (std::size_t b = 0; b < m; ++b) {
        std::vector<Matrix<K>> cols;
        for (const auto& p : pieces) cols.push_back(p.comps[b]);
        t.comps.push_back(hstack(cols));
    }
    out.map = std::move(t);
    return out;
}

template <ExactField K>
struct Resolution {
    Complex<K> res;
    ChainMap<K> aug;  // projective: res -> x; injective: x -> res
};

// Builds, from the bottom degree up, a complex of representable sums with a
// degreewise surjective quasi-isomorphism onto x.  Each new term covers the
// pullback {(x_n, p): d x_n = aug(p), d p = 0}, which makes the kernel complex
// exact; the cap bounds how far the tail may extend past the support of x.
template <ExactField K>
Resolution<K> projective_resolution(const Complex<K>& x, std::size_t cap = 16) {
    if (auto bad = validate_complex(x)) throw PreconditionError("bad complex: " + *bad);
    const LinCat<K>& c = *x.cat;
    const std::size_t m = c.num_objects();

    Resolution<K> out;
    out.res.cat = x.cat;
    const auto [lo, hi] = support(x);
    if (lo > hi) {
        out.aug = ChainMap<K>{out.res, x, {}};
        return out;
    }

    std::map<int, Rep<K>> p;
    std::map<int, NatTrans<K>> pd, aug;
    for (int n = lo;; ++n) {
        const Rep<K> prev = p.count(n - 1) ? p.at(n - 1) : zero_rep<K>(x.cat);
        if (n > hi && prev.total_dim() == 0) break;
        if (n - lo > hi - lo + static_cast<int>(cap))
            throw LimitError("projective resolution exceeded the length cap");

        const Rep<K> prev2 = p.count(n - 2) ? p.at(n - 2) : zero_rep<K>(x.cat);
        const auto src = direct_sum_reps<K>({x.term(n), prev});
        const auto dst = direct_sum_reps<K>({x.term(n - 1), prev2});
        const NatTrans<K> dx = x.d(n);
        const NatTrans<K> ph = aug.count(n - 1) ? aug.at(n - 1) : zero_nat(prev, x.term(n - 1));
        const NatTrans<K> dp = pd.count(n - 1) ? pd.at(n - 1) : zero_nat(prev, prev2);

        NatTrans<K> t = zero_nat(src.rep, dst.rep);
        for (std::size_t a = 0; a < m; ++a)
            t.comps[a] = dst.inject[0].comps[a] *
                             (dx.comps[a] * src.project[0].comps[a] -
                              ph.comps[a] * src.project[1].comps[a]) +
                         dst.inject[1].comps[a] * dp.comps[a] * src.project[1].comps[a];

        const auto sub = kernel(t);
        const auto cov = representable_cover(sub.rep);
        if (cov.proj.total_dim() == 0) {
            if (n > hi) break;
            continue;
        }
        const auto into = compose_nat(cov.map, sub.map);
        p.emplace(n, cov.proj);
        aug.emplace(n, compose_nat(into, src.project[0]));
        pd.emplace(n, compose_nat(into, src.project[1]));
    }

    for (const auto& [n, t] : p) out.res.terms.emplace(n, t);
    for (const auto& [n, t] : pd)
        if (t.src.total_dim() > 0 && t.dst.total_dim() > 0) out.res.diff.emplace(n, t);
    out.aug = ChainMap<K>{out.res, x, {}};
    for (const auto& [n, t] : aug)
        if (t.src.total_dim() > 0) out.aug.comps.emplace(n, t);
    return out;
}

template <ExactField K>
Resolution<K> projective_resolution(const Rep<K>& x, std::size_t cap = 16) {
    return projective_resolution(complex_of(x), cap);
}

// ---------------------------------------------------------------------------
// Duality and injective resolutions

template <ExactField K>
Rep<K> dual_rep(const Rep<K>& x, LinCatPtr<K> opc) {
    Rep<K> out = make_zero_shaped_rep<K>(opc, x.dims);
    const LinCat<K>& c = *opc;
    for (std::size_t a = 0; a < c.num_objects(); ++a)
        for (std::size_t b = 0; b < c.num_objects(); ++b)
            for (std::size_t i = 0; i < c.hom_dim(a, b); ++i)
                out.act[{a, b}][i] = x.action(b, a, i).transpose();
    return out;
}

// t: X -> Y dualizes to Y* -> X* over the opposite category.
template <ExactField K>
NatTrans<K> dual_nat(const NatTrans<K>& t, LinCatPtr<K> opc) {
    NatTrans<K> out{dual_rep(t.dst, opc), dual_rep(t.src, opc), {}};
    for (const auto& m : t.comps) out.comps.push_back(m.transpose());
    return out;
}

// Degree n of the dual is the dual of degree -n; differentials transpose.
template <ExactField K>
Complex<K> dual_complex(const Complex<K>& x, LinCatPtr<K> opc) {
    Complex<K> out;
    out.cat = opc;
    for (const auto& [n, t] : x.terms) out.terms.emplace(-n, dual_rep(t, opc));
    for (const auto& [n, t] : x.diff) out.diff.emplace(-n + 1, dual_nat(t, opc));
    return out;
}

// Resolve the dual complex projectively over the opposite category, dualize
// back.  Terms are duals of representable sums, hence injective; the
// augmentation is a degreewise injective quasi-isomorphism into the result.
template <ExactField K>
Resolution<K> injective_resolution(const Complex<K>& x, std::size_t cap = 16) {
    if (auto bad = validate_complex(x)) throw PreconditionError("bad complex: " + *bad);
    const auto opc = std::make_shared<const LinCat<K>>(opposite(*x.cat));
    const auto pr = projective_resolution(dual_complex(x, opc), cap);

    Resolution<K> out;
    out.res = dual_complex(pr.res, x.cat);
    out.aug = ChainMap<K>{x, out.res, {}};
    for (const auto& [n, t] : pr.aug.comps) {
        NatTrans<K> back{x.term(-n), out.res.term(-n), {}};
        for (const auto& m : t.comps) back.comps.push_back(m.transpose());
        out.aug.comps.emplace(-n, std::move(back));
    }
    return out;
}

template <ExactField K>
Resolution<K> injective_resolution(const Rep<K>& x, std::size_t cap = 16) {
    return injective_resolution(complex_of(x), cap);
}

// ---------------------------------------------------------------------------
// Derived hom

// Dimensions of Hom in the derived category per degree: the homology of the
// total hom complex from a projective resolution of x.  Degree n collects the
// families (f_i: P_i -> Y_{i+n}); its differential is
// (df)_i = d^Y f_i - (-1)^n f_{i-1} d^P.  Zero dimensions are omitted.
template <ExactField K>
std::map<int, std::size_t> derived_hom(const Complex<K>& x, const Complex<K>& y,
                                       std::size_t cap = 16) {
    const auto pr = projective_resolution(x, cap);
    const Complex<K> p = trim(pr.res);
    const Complex<K> ty = trim(y);
    if (p.terms.empty() || ty.terms.empty()) return {};
    const auto [plo, phi] = support(p);
    const auto [ylo, yhi] = support(ty);
    const int nlo = ylo - phi, nhi = yhi - plo;

    std::map<std::pair<int, int>, std::vector<NatTrans<K>>> basis;  // (level, degree)
    const auto block = [&](int i, int n) -> const std::vector<NatTrans<K>>& {
        const auto key = std::make_pair(i, n);
        auto it = basis.find(key);
        if (it == basis.end())
            it = basis.emplace(key, hom_space(p.term(i), ty.term(i + n))).first;
        return it->second;
    };

    std::map<int, std::size_t> vdim;
    std::map<int, std::vector<std::size_t>> offs;  // per degree, offset per level
    for (int n = nlo; n <= nhi; ++n) {
        std::size_t total = 0;
        std::vector<std::size_t> off;
        for (int i = plo; i <= phi; ++i) {
            off.push_back(total);
            total += block(i, n).size();
        }
        vdim[n] = total;
        offs[n] = std::move(off);
    }
    const auto dim_at = [&](int n) { return vdim.count(n) ? vdim.at(n) : 0; };

    std::map<int, std::size_t> drank;  // rank of d_n: V_n -> V_{n-1}
    for (int n = nlo; n <= nhi + 1; ++n) {
        const std::size_t cols = dim_at(n), rows = dim_at(n - 1);
        if (cols == 0 || rows == 0) {
            drank[n] = 0;
            continue;
        }
        Matrix<K> mat(rows, cols);
        const K sign = (n % 2 == 0) ? K(-1) : K(1);  // -(-1)^n
        for (int i = plo; i <= phi; ++i) {
            const auto& src_blk = block(i, n);
            for (std::size_t j = 0; j < src_blk.size(); ++j) {
                const std::size_t col = offs.at(n)[i - plo] + j;
                const auto down = compose_nat(src_blk[j], ty.d(i + n));
                const auto dc = nat_coords(block(i, n - 1), down);
                for (std::size_t r = 0; r < dc.size(); ++r)
                    mat(offs.at(n - 1)[i - plo] + r, col) = dc[r];
                if (i + 1 <= phi) {
                    const auto side = compose_nat(p.d(i + 1), src_blk[j]);
                    const auto sc = nat_coords(block(i + 1, n - 1), side);
                    for (std::size_t r = 0; r < sc.size(); ++r)
                        mat(offs.at(n - 1)[i + 1 - plo] + r, col) =
                            mat(offs.at(n - 1)[i + 1 - plo] + r, col) + sign * sc[r];
                }
            }
        }
        drank[n] = rank(mat);
    }

    std::map<int, std::size_t> out;
    for (int n = nlo; n <= nhi; ++n) {
        const std::size_t h = dim_at(n) - drank.at(n) - drank.at(n + 1);
        if (h > 0) out[n] = h;
    }
    return out;
}

template <ExactField K>
std::map<int, std::size_t> derived_hom(const Rep<K>& x, const Complex<K>& y,
                                       std::size_t cap = 16) {
    return derived_hom(complex_of(x), y, cap);
}

// dim Hom_D(repr(a)[n], y) must equal dim H_n(y(a)) in every degree.
template <ExactField K>
CheckReport tenshom_check(std::size_t a, const Complex<K>& y, std::size_t cap = 16) {
    if (a >= y.cat->num_objects()) throw LookupError("no such object");
    CheckReport report;
    const auto dh = derived_hom(complex_of(representable<K>(y.cat, a)), y, cap);
    const auto [lo, hi] = support(y);
    for (int n = lo; n <= hi; ++n) {
        const std::size_t lhs = dh.count(n) ? dh.at(n) : 0;
        const std::size_t rhs = homology(y, n).dims[a];
        report.add("degree " + std::to_string(n), lhs == rhs,
                   "derived " + std::to_string(lhs) + " vs homology " + std::to_string(rhs));
    }
    for (const auto& [n, h] : dh)
        if (n < lo || n > hi)
            report.add("degree " + std::to_string(n), false,
                       "derived hom nonzero outside the support window");
    return report;
}

}  // namespace recollem
