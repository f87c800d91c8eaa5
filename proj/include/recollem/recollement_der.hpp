#pragma once
// Derived recollement along a full subcategory A of C. Restriction rho is
// exact; its derived adjoints rho_L (lan of a projective resolution) and
// rho_R (ran of an injective resolution) are applied degreewise. E_A is the
// kernel on the derived level: complexes whose homology vanishes on A. The
// missing inclusion adjoints are modelled by cones over the (co)unit.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "recollem/complexes.hpp"
#include "recollem/kan.hpp"
#include "recollem/recollement_ab.hpp"

namespace recollem {

template <ExactField K>
struct DerRecollement {
    AbRecollement<K> base;
    std::size_t cap = 16;  // resolution length cap per complex

    const Subcat<K>& sub() const { return base.sub; }
    const LinCatPtr<K>& cat() const { return base.sub.parent; }
};

template <ExactField K>
DerRecollement<K> make_der_recollement(LinCatPtr<K> cat, std::vector<std::size_t> objects,
                                       std::size_t cap = 16) {
    return DerRecollement<K>{make_ab_recollement(std::move(cat), std::move(objects)), cap};
}

// Homology vanishes at every object of A. Rank bookkeeping only; the actions
// never enter.
template <ExactField K>
bool in_E_A(const Complex<K>& y, const DerRecollement<K>& rec) {
    if (!same_cat(y.cat, rec.cat()))
        throw PreconditionError("complex not over the recollement category");
    if (auto bad = validate_complex(y)) throw PreconditionError("bad complex: " + *bad);
    const auto [lo, hi] = support(y);
    for (int n = lo; n <= hi; ++n)
        for (std::size_t a : rec.sub().objects)
            if (y.term(n).dims[a] != rank(y.d(n).comps[a]) + rank(y.d(n + 1).comps[a]))
                return false;
    return true;
}

// Degreewise restriction. Exact, so no resolution enters.
template <ExactField K>
Complex<K> rho(const Complex<K>& y, const DerRecollement<K>& rec) {
    if (!same_cat(y.cat, rec.cat()))
        throw PreconditionError("complex not over the recollement category");
    if (auto bad = validate_complex(y)) throw PreconditionError("bad complex: " + *bad);
    Complex<K> out;
    out.cat = rec.sub().cat;
    for (const auto& [n, t] : y.terms) out.terms.emplace(n, restrict_rep(t, rec.sub()));
    for (const auto& [n, t] : y.diff) out.diff.emplace(n, restrict_nat(t, rec.sub()));
    return trim(out);
}

namespace detail {

// Kan extension applied degreewise to a resolution, keeping the per-degree
// presentations so adjunct maps can still be formed afterwards.
template <ExactField K>
struct LanTransport {
    Complex<K> cx;                    // over the ambient category
    std::map<int, LanResult<K>> per;  // keyed by resolution degree
    Resolution<K> res;                // projective on the subcategory side, aug: res -> x
};

template <ExactField K>
LanTransport<K> lan_complex(const Complex<K>& x, const DerRecollement<K>& rec) {
    LanTransport<K> out;
    out.res = projective_resolution(x, rec.cap);
    out.cx.cat = rec.cat();
    for (const auto& [n, t] : out.res.res.terms) {
        auto lr = lan(t, rec.sub());
        if (lr.rep.total_dim() > 0) out.cx.terms.emplace(n, lr.rep);
        out.per.emplace(n, std::move(lr));
    }
    for (const auto& [n, t] : out.res.res.diff)
        if (out.cx.terms.count(n) != 0 && out.cx.terms.count(n - 1) != 0)
            out.cx.diff.emplace(n, lan_nat(t, out.per.at(n), out.per.at(n - 1)));
    return out;
}

template <ExactField K>
struct RanTransport {
    Complex<K> cx;
    std::map<int, RanResult<K>> per;
    Resolution<K> res;  // injective on the subcategory side, aug: x -> res
};

template <ExactField K>
RanTransport<K> ran_complex(const Complex<K>& x, const DerRecollement<K>& rec) {
    RanTransport<K> out;
    out.res = injective_resolution(x, rec.cap);
    out.cx.cat = rec.cat();
    for (const auto& [n, t] : out.res.res.terms) {
        auto rr = ran(t, rec.sub());
        if (rr.rep.total_dim() > 0) out.cx.terms.emplace(n, rr.rep);
        out.per.emplace(n, std::move(rr));
    }
    for (const auto& [n, t] : out.res.res.diff)
        if (out.cx.terms.count(n) != 0 && out.cx.terms.count(n - 1) != 0)
            out.cx.diff.emplace(n, ran_nat(t, out.per.at(n), out.per.at(n - 1)));
    return out;
}

inline std::string dim_table(const std::map<int, std::size_t>& t) {
    std::string s = "{";
    for (const auto& [n, d] : t) s += " " + std::to_string(n) + ":" + std::to_string(d);
    return s + " }";
}

}  // namespace detail

// Left derived extension of a complex over the subcategory model.
template <ExactField K>
Complex<K> rho_L(const Complex<K>& x, const DerRecollement<K>& rec) {
    if (!same_cat(x.cat, rec.sub().cat))
        throw PreconditionError("complex not over the subcategory model");
    return detail::lan_complex(x, rec).cx;
}

// Right derived extension of a complex over the subcategory model.
template <ExactField K>
Complex<K> rho_R(const Complex<K>& x, const DerRecollement<K>& rec) {
    if (!same_cat(x.cat, rec.sub().cat))
        throw PreconditionError("complex not over the subcategory model");
    return detail::ran_complex(x, rec).cx;
}

// rho_L(rho(y)) -> y, assembled degreewise as the adjunct of the resolution
// augmentation.
template <ExactField K>
struct CounitTriangle {
    Complex<K> src;      // rho_L(rho(y))
    ChainMap<K> counit;  // src -> y
};

template <ExactField K>
CounitTriangle<K> rho_L_counit(const Complex<K>& y, const DerRecollement<K>& rec) {
    const Complex<K> ry = rho(y, rec);
    auto tl = detail::lan_complex(ry, rec);
    ChainMap<K> f{tl.cx, y, {}};
    for (const auto& [n, lr] : tl.per) {
        if (lr.rep.total_dim() == 0) continue;
        f.comps.emplace(n, lan_transpose(lr, y.term(n), tl.res.aug.comp(n)));
    }
    if (auto bad = validate_chain_map(f)) throw ConsistencyError("counit: " + *bad);
    return {std::move(tl.cx), std::move(f)};
}

// y -> rho_R(rho(y)), the adjunct of the injective coaugmentation.
template <ExactField K>
struct UnitTriangle {
    Complex<K> dst;    // rho_R(rho(y))
    ChainMap<K> unit;  // y -> dst
};

template <ExactField K>
UnitTriangle<K> rho_R_unit(const Complex<K>& y, const DerRecollement<K>& rec) {
    const Complex<K> ry = rho(y, rec);
    auto tr = detail::ran_complex(ry, rec);
    ChainMap<K> f{y, tr.cx, {}};
    for (const auto& [n, rr] : tr.per) {
        if (rr.rep.total_dim() == 0) continue;
        f.comps.emplace(n, ran_transpose(rr, y.term(n), tr.res.aug.comp(n)));
    }
    if (auto bad = validate_chain_map(f)) throw ConsistencyError("unit: " + *bad);
    return {std::move(tr.cx), std::move(f)};
}

// Image of y under iota iota_L: the cone over the counit, certified in E_A.
template <ExactField K>
Complex<K> iota_L(const Complex<K>& y, const DerRecollement<K>& rec) {
    auto tri = rho_L_counit(y, rec);
    Complex<K> cx = trim(cone(tri.counit));
    if (!in_E_A(cx, rec)) throw ConsistencyError("iota_L output has homology on the subcategory");
    return cx;
}

// Image of y under iota iota_R: the shifted cone over the unit, certified in
// E_A.
template <ExactField K>
Complex<K> iota_R(const Complex<K>& y, const DerRecollement<K>& rec) {
    auto tri = rho_R_unit(y, rec);
    Complex<K> cx = trim(shift(cone(tri.unit), -1));
    if (!in_E_A(cx, rec)) throw ConsistencyError("iota_R output has homology on the subcategory");
    return cx;
}

// Certifies the derived recollement on a suite of test complexes over C:
// E_A is the right perpendicular of the subcategory representables, hom
// dimensions descend through rho, both adjunction triangles are exact with
// third terms in E_A, the composites that must die do, and the adjunction
// dimension laws hold against every subcategory generator.
template <ExactField K>
CheckReport verify_der_recollement(const DerRecollement<K>& rec,
                                   const std::vector<Complex<K>>& tests) {
    if (tests.empty())
        throw PreconditionError("verify_der_recollement needs at least one test complex");
    CheckReport report;
    const Subcat<K>& sub = rec.sub();
    const std::size_t m = sub.size();

    std::vector<Complex<K>> gen_left;   // rho_L of each subcategory representable
    std::vector<Complex<K>> gen_right;  // rho_R of each subcategory representable
    for (std::size_t p = 0; p < m; ++p) {
        const std::string tag = " at " + sub.cat->object_id(p);
        const auto x = complex_of(representable<K>(sub.cat, p));

        auto tl = detail::lan_complex(x, rec);
        gen_left.push_back(tl.cx);
        ChainMap<K> mu{tl.res.res, rho(tl.cx, rec), {}};
        for (const auto& [n, lr] : tl.per)
            if (lr.source.total_dim() > 0) mu.comps.emplace(n, unit_mu(lr));
        const bool mu_ok = !validate_chain_map(mu).has_value() && is_quasi_iso(mu) &&
                           is_quasi_iso(tl.res.aug);
        report.add("rho after rho_L is the identity" + tag, mu_ok,
                   "unit or augmentation is not a quasi-isomorphism");

        auto tr = detail::ran_complex(x, rec);
        gen_right.push_back(tr.cx);
        ChainMap<K> nu{rho(tr.cx, rec), tr.res.res, {}};
        for (const auto& [n, rr] : tr.per)
            if (rr.source.total_dim() > 0) nu.comps.emplace(n, counit_nu(rr));
        const bool nu_ok = !validate_chain_map(nu).has_value() && is_quasi_iso(nu) &&
                           is_quasi_iso(tr.res.aug);
        report.add("rho after rho_R is the identity" + tag, nu_ok,
                   "counit or coaugmentation is not a quasi-isomorphism");

        try {
            report.add("iota_L after rho_L vanishes" + tag, is_acyclic(iota_L(tl.cx, rec)),
                       "cone of the counit has homology");
        } catch (const Error& e) {
            report.add("iota_L after rho_L vanishes" + tag, false, e.what());
        }
    }

    for (std::size_t i = 0; i < tests.size(); ++i) {
        const Complex<K>& y = tests[i];
        const std::string tag = " on test " + std::to_string(i);
        const Complex<K> ry = rho(y, rec);
        const bool member = in_E_A(y, rec);

        bool no_maps = true;
        for (std::size_t p = 0; p < m; ++p) {
            const std::string where = tag + " at " + sub.cat->object_id(p);
            const auto xc = complex_of(representable<K>(sub.parent, sub.to_ambient(p)));
            const auto xa = complex_of(representable<K>(sub.cat, p));
            const auto over_c = derived_hom(xc, y, rec.cap);
            const auto over_a = derived_hom(xa, ry, rec.cap);
            if (!over_c.empty()) no_maps = false;
            report.add("restriction preserves hom dimensions" + where, over_c == over_a,
                       detail::dim_table(over_c) + " vs " + detail::dim_table(over_a));
            report.add("left adjunction dimensions" + where,
                       derived_hom(gen_left[p], y, rec.cap) == over_a,
                       "hom from the extended generator disagrees with the restricted side");
            report.add("right adjunction dimensions" + where,
                       derived_hom(y, gen_right[p], rec.cap) == derived_hom(ry, xa, rec.cap),
                       "hom into the coextended generator disagrees with the restricted side");
        }
        report.add("E_A matches the perpendicular of the generators" + tag, member == no_maps,
                   member ? "member of E_A receives maps from a generator"
                          : "non-member receives no maps");

        try {
            auto ct = rho_L_counit(y, rec);
            report.add("counit triangle is exact" + tag, cone_les_check(ct.counit).ok(),
                       "long exact sequence broke");
            auto cw = cone_with_maps(ct.counit);
            report.add("iota_L output lies in E_A" + tag, in_E_A(cw.cx, rec),
                       "cone homology survives on the subcategory");
            report.add("rho kills iota_L" + tag, is_acyclic(rho(cw.cx, rec)),
                       "restricted cone has homology");
            if (member)
                report.add("iota_L fixes E_A members" + tag, is_quasi_iso(cw.incl),
                           "inclusion into the cone is not a quasi-isomorphism");
        } catch (const Error& e) {
            report.add("counit triangle is exact" + tag, false, e.what());
        }
        try {
            auto ut = rho_R_unit(y, rec);
            report.add("unit triangle is exact" + tag, cone_les_check(ut.unit).ok(),
                       "long exact sequence broke");
            report.add("iota_R output lies in E_A" + tag,
                       in_E_A(trim(shift(cone(ut.unit), -1)), rec),
                       "shifted cone homology survives on the subcategory");
        } catch (const Error& e) {
            report.add("unit triangle is exact" + tag, false, e.what());
        }
    }
    return report;
}

// The quotient of D[C,V] by E_A is modelled on D[A,V]: the localization is
// restriction followed by that identification, and its adjoints are the
// derived Kan extensions.
template <ExactField K>
struct LambdaFunctors {
    std::function<Complex<K>(const Complex<K>&)> lambda;    // ambient -> quotient model
    std::function<Complex<K>(const Complex<K>&)> lambda_L;  // quotient model -> ambient
    std::function<Complex<K>(const Complex<K>&)> lambda_R;
};

template <ExactField K>
LambdaFunctors<K> lambda_functors(const DerRecollement<K>& rec) {
    LambdaFunctors<K> out;
    out.lambda = [rec](const Complex<K>& y) { return rho(y, rec); };
    out.lambda_L = [rec](const Complex<K>& x) { return rho_L(x, rec); };
    out.lambda_R = [rec](const Complex<K>& x) { return rho_R(x, rec); };
    return out;
}

}  // namespace recollem
