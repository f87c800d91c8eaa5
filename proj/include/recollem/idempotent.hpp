#pragma once
// Modules over a finite-dimensional algebra with a chosen idempotent e, the
// Mitchell correspondence with representations of the two-object Peirce
// category, and the classical gluing functors Hom_R(Re,-), Re (x)_{eRe} -,
// Hom_{eRe}(eR,-) and M/(ReR.M), each computed by direct linear algebra on
// the module side.  Deliberately independent of the Kan-extension machinery
// so the two constructions can be cross-checked against each other.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recollem/recollement_ab.hpp"
#include "recollem/report.hpp"

namespace recollem {

// Left module: action[i] is the matrix of the i-th algebra basis element and
// action(u*v) = action(u)*action(v).
template <ExactField K>
struct Module {
    std::size_t dim = 0;
    std::vector<Matrix<K>> action;
};

namespace detail {

template <ExactField K>
Matrix<K> col_vec(const std::vector<K>& v) {
    Matrix<K> m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

template <ExactField K>
std::vector<K> col_of(const Matrix<K>& m, std::size_t j) {
    std::vector<K> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

template <ExactField K>
std::vector<K> indicator(std::size_t d, std::size_t i) {
    std::vector<K> v(d, K(0));
    v[i] = K(1);
    return v;
}

// Row-major flattening; columns of the result enumerate the given matrices.
template <ExactField K>
Matrix<K> stack_rm(const std::vector<Matrix<K>>& ms, std::size_t len) {
    Matrix<K> out(len, ms.size());
    for (std::size_t j = 0; j < ms.size(); ++j)
        for (std::size_t r = 0; r < ms[j].rows(); ++r)
            for (std::size_t c = 0; c < ms[j].cols(); ++c)
                out(r * ms[j].cols() + c, j) = ms[j](r, c);
    return out;
}

// Coordinates of each target in the span of a matrix basis.
template <ExactField K>
Matrix<K> coords_in_span(const std::vector<Matrix<K>>& basis,
                         const std::vector<Matrix<K>>& targets, std::size_t len,
                         const char* what) {
    const auto sol = solve(stack_rm(basis, len), stack_rm(targets, len));
    if (!sol) throw ConsistencyError(what);
    return *sol;
}

}  // namespace detail

template <ExactField K>
Matrix<K> module_action_of(const Module<K>& m, const std::vector<K>& elem) {
    Matrix<K> out(m.dim, m.dim);
    for (std::size_t i = 0; i < elem.size(); ++i) {
        if (elem[i] == K(0)) continue;
        out = out + elem[i] * m.action[i];
    }
    return out;
}

template <ExactField K>
std::optional<std::string> validate_module(const Algebra<K>& R, const Module<K>& m) {
    if (m.action.size() != R.dim) return "wrong number of action matrices";
    for (const auto& a : m.action)
        if (a.rows() != m.dim || a.cols() != m.dim) return "action matrix shape mismatch";
    if (module_action_of(m, R.unit) != Matrix<K>::identity(m.dim))
        return "unit does not act as the identity";
    for (std::size_t i = 0; i < R.dim; ++i)
        for (std::size_t j = 0; j < R.dim; ++j) {
            const auto prod = R.multiply(detail::indicator<K>(R.dim, i),
                                         detail::indicator<K>(R.dim, j));
            if (m.action[i] * m.action[j] != module_action_of(m, prod))
                return "action is not multiplicative at basis pair (" + std::to_string(i) +
                       "," + std::to_string(j) + ")";
        }
    return std::nullopt;
}

template <ExactField K>
Module<K> regular_module(const Algebra<K>& R) {
    Module<K> m{R.dim, {}};
    for (std::size_t i = 0; i < R.dim; ++i)
        m.action.push_back(R.left_mult(detail::indicator<K>(R.dim, i)));
    return m;
}

// The left ideal R*gen with the restricted action, in pivot-column coordinates.
template <ExactField K>
struct LeftIdealModule {
    Module<K> mod;
    Matrix<K> basis;  // dim R x mod.dim columns inside R
};

template <ExactField K>
LeftIdealModule<K> left_ideal_module(const Algebra<K>& R, const std::vector<K>& gen) {
    LeftIdealModule<K> out;
    out.basis = decompose(R.right_mult(gen)).image_basis;
    out.mod.dim = out.basis.cols();
    for (std::size_t i = 0; i < R.dim; ++i) {
        const auto act =
            solve(out.basis, R.left_mult(detail::indicator<K>(R.dim, i)) * out.basis);
        if (!act) throw ConsistencyError("left ideal is not closed under the action");
        out.mod.action.push_back(*act);
    }
    return out;
}

// Basis of the R-linear maps x -> y.
template <ExactField K>
std::vector<Matrix<K>> hom_modules(const Algebra<K>& R, const Module<K>& x,
                                   const Module<K>& y) {
    const std::size_t dx = x.dim, dy = y.dim;
    std::vector<Matrix<K>> rows;
    for (std::size_t i = 0; i < R.dim; ++i)
        rows.push_back(kron(Matrix<K>::identity(dy), x.action[i].transpose()) -
                       kron(y.action[i], Matrix<K>::identity(dx)));
    const Matrix<K> sys = rows.empty() ? Matrix<K>(0, dx * dy) : vstack(rows);
    const auto ker = decompose(sys).kernel_basis;
    std::vector<Matrix<K>> basis;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        Matrix<K> g(dy, dx);
        for (std::size_t r = 0; r < dy; ++r)
            for (std::size_t c = 0; c < dx; ++c) g(r, c) = ker(r * dx + c, j);
        basis.push_back(std::move(g));
    }
    return basis;
}

// Module on f(E) (+) f(E*) with the action reassembled from the Peirce blocks.
template <ExactField K>
Module<K> mitchell_module(const PeirceCategory<K>& P, const Rep<K>& f) {
    if (!same_cat(f.cat, P.cat)) throw PreconditionError("rep not over the Peirce category");
    const Algebra<K>& R = P.source.alg;
    std::vector<K> side0 = P.source.idem, side1(R.dim);
    for (std::size_t i = 0; i < R.dim; ++i) side1[i] = R.unit[i] - side0[i];
    const std::vector<K>* side[2] = {&side0, &side1};
    const std::size_t off[2] = {0, f.dims[0]};

    Module<K> m{f.dims[0] + f.dims[1], {}};
    m.action.assign(R.dim, Matrix<K>(m.dim, m.dim));
    for (std::size_t i = 0; i < R.dim; ++i) {
        const auto bi = detail::indicator<K>(R.dim, i);
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t x = 0; x < 2; ++x) {
                const auto elem = R.multiply(*side[y], R.multiply(bi, *side[x]));
                if (P.cat->hom_dim(x, y) == 0) {
                    for (const auto& cf : elem)
                        if (!(cf == K(0)))
                            throw ConsistencyError("Peirce block exceeds its hom space");
                    continue;
                }
                const Matrix<K> blk = f.action_of(x, y, P.to_block_coords(y, x, elem));
                for (std::size_t r = 0; r < blk.rows(); ++r)
                    for (std::size_t s = 0; s < blk.cols(); ++s)
                        m.action[i](off[y] + r, off[x] + s) = blk(r, s);
            }
    }
    return m;
}

// Block-diagonal matrix of a natural transformation on the stacked values.
template <ExactField K>
Matrix<K> mitchell_map(const NatTrans<K>& t) {
    std::size_t rows = 0, cols = 0;
    for (const auto& c : t.comps) {
        rows += c.rows();
        cols += c.cols();
    }
    Matrix<K> out(rows, cols);
    std::size_t ro = 0, co = 0;
    for (const auto& c : t.comps) {
        for (std::size_t r = 0; r < c.rows(); ++r)
            for (std::size_t s = 0; s < c.cols(); ++s) out(ro + r, co + s) = c(r, s);
        ro += c.rows();
        co += c.cols();
    }
    return out;
}

// Rep with f(X) = (1_X)M, in pivot-column coordinates of the two projectors.
template <ExactField K>
struct ModuleRep {
    Rep<K> rep;
    Matrix<K> basis[2];  // columns of (1_X)M inside M
};

template <ExactField K>
ModuleRep<K> module_to_rep(const PeirceCategory<K>& P, const Module<K>& m) {
    const Algebra<K>& R = P.source.alg;
    std::vector<K> side0 = P.source.idem, side1(R.dim);
    for (std::size_t i = 0; i < R.dim; ++i) side1[i] = R.unit[i] - side0[i];
    const std::vector<K>* side[2] = {&side0, &side1};

    ModuleRep<K> out;
    std::vector<std::size_t> dims(2);
    for (std::size_t x = 0; x < 2; ++x) {
        out.basis[x] = decompose(module_action_of(m, *side[x])).image_basis;
        dims[x] = out.basis[x].cols();
    }
    out.rep = make_zero_shaped_rep<K>(P.cat, dims);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t i = 0; i < P.cat->hom_dim(x, y); ++i) {
                const auto elem =
                    P.block_elem(y, x, detail::indicator<K>(P.cat->hom_dim(x, y), i));
                const auto act = solve(out.basis[y], module_action_of(m, elem) * out.basis[x]);
                if (!act)
                    throw ConsistencyError("module action does not respect the splitting");
                out.rep.act[{x, y}][i] = *act;
            }
    return out;
}

template <ExactField K>
NatTrans<K> module_map_nat(const ModuleRep<K>& src, const ModuleRep<K>& dst,
                           const Matrix<K>& g) {
    NatTrans<K> t{src.rep, dst.rep, {}};
    for (std::size_t x = 0; x < 2; ++x) {
        const auto comp = solve(dst.basis[x], g * src.basis[x]);
        if (!comp) throw ConsistencyError("module map does not respect the splitting");
        t.comps.push_back(*comp);
    }
    return t;
}

// The corner algebra e R e in pivot-column coordinates.
template <ExactField K>
struct CornerAlgebra {
    Algebra<K> alg;
    Matrix<K> embed;  // dim R x alg.dim
};

template <ExactField K>
CornerAlgebra<K> corner_algebra(const Algebra<K>& R, const std::vector<K>& e) {
    CornerAlgebra<K> out;
    out.embed = decompose(R.left_mult(e) * R.right_mult(e)).image_basis;
    const std::size_t q = out.embed.cols();
    std::vector<K> mult(q * q * q, K(0));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            const auto prod =
                R.multiply(detail::col_of(out.embed, i), detail::col_of(out.embed, j));
            const auto coords = solve(out.embed, detail::col_vec(prod));
            if (!coords) throw ConsistencyError("corner is not closed under the product");
            for (std::size_t k = 0; k < q; ++k) mult[(i * q + j) * q + k] = (*coords)(k, 0);
        }
    const auto unit = solve(out.embed, detail::col_vec(e));
    if (!unit) throw ConsistencyError("idempotent does not lie in its corner");
    std::vector<K> u(q);
    for (std::size_t k = 0; k < q; ++k) u[k] = (*unit)(k, 0);
    out.alg = Algebra<K>::make(q, std::move(mult), std::move(u));
    return out;
}

// Hom_R(Re, M): the solution space of the R-linearity equations, as a module
// over the corner algebra via (s.phi)(x) = phi(x*s).
template <ExactField K>
struct HomReModule {
    Module<K> mod;               // over eRe
    std::vector<Matrix<K>> sol;  // phi_k: dim M x dim Re, domain in re_basis coords
    Matrix<K> re_basis;          // dim R x dim Re columns spanning Re
};

template <ExactField K>
HomReModule<K> hom_Re(const Algebra<K>& R, const std::vector<K>& e,
                      const CornerAlgebra<K>& corner, const Module<K>& m) {
    HomReModule<K> out;
    out.re_basis = decompose(R.right_mult(e)).image_basis;
    const std::size_t r = out.re_basis.cols(), dM = m.dim;

    // unknowns vec(phi) row-major; constraint phi(b_i x_j) = b_i phi(x_j)
    std::vector<Matrix<K>> rows;
    for (std::size_t i = 0; i < R.dim; ++i) {
        const auto cij = solve(out.re_basis,
                               R.left_mult(detail::indicator<K>(R.dim, i)) * out.re_basis);
        if (!cij) throw ConsistencyError("Re is not closed under left multiplication");
        for (std::size_t j = 0; j < r; ++j) {
            Matrix<K> block(dM, dM * r);
            for (std::size_t row = 0; row < dM; ++row)
                for (std::size_t col = 0; col < r; ++col)
                    block(row, row * r + col) = (*cij)(col, j);
            for (std::size_t row = 0; row < dM; ++row)
                for (std::size_t s = 0; s < dM; ++s)
                    block(row, s * r + j) = block(row, s * r + j) - m.action[i](row, s);
            rows.push_back(std::move(block));
        }
    }
    const Matrix<K> sys = rows.empty() ? Matrix<K>(0, dM * r) : vstack(rows);
    const auto ker = decompose(sys).kernel_basis;
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        Matrix<K> phi(dM, r);
        for (std::size_t row = 0; row < dM; ++row)
            for (std::size_t col = 0; col < r; ++col) phi(row, col) = ker(row * r + col, k);
        out.sol.push_back(std::move(phi));
    }

    const std::size_t q = corner.alg.dim;
    out.mod.dim = out.sol.size();
    out.mod.action.assign(q, Matrix<K>(out.mod.dim, out.mod.dim));
    for (std::size_t t = 0; t < q; ++t) {
        const auto ct = solve(out.re_basis,
                              R.right_mult(detail::col_of(corner.embed, t)) * out.re_basis);
        if (!ct) throw ConsistencyError("Re is not closed under the corner action");
        if (out.sol.empty()) continue;
        std::vector<Matrix<K>> targets;
        for (const auto& phi : out.sol) targets.push_back(phi * (*ct));
        out.mod.action[t] = detail::coords_in_span(out.sol, targets, dM * r,
                                                   "corner action leaves the hom space");
    }
    return out;
}

// Re (x)_{eRe} N as the quotient of Re (x)_k N by the balanced relations.
// Coordinates on Re (x) N are Re-major: index = j*n + k.
template <ExactField K>
struct InducedModule {
    Module<K> mod;   // over R
    Matrix<K> proj;  // Re (x) N -> mod
};

template <ExactField K>
InducedModule<K> tensor_back(const Algebra<K>& R, const CornerAlgebra<K>& corner,
                             const HomReModule<K>& nm) {
    const std::size_t r = nm.re_basis.cols(), n = nm.mod.dim, q = corner.alg.dim;
    std::vector<Matrix<K>> cols;
    for (std::size_t t = 0; t < q; ++t) {
        const auto ct = solve(nm.re_basis,
                              R.right_mult(detail::col_of(corner.embed, t)) * nm.re_basis);
        if (!ct) throw ConsistencyError("Re is not closed under the corner action");
        const Matrix<K>& st = nm.mod.action[t];
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Matrix<K> col(r * n, 1);
                for (std::size_t i = 0; i < r; ++i) col(i * n + k, 0) = (*ct)(i, j);
                for (std::size_t l = 0; l < n; ++l)
                    col(j * n + l, 0) = col(j * n + l, 0) - st(l, k);
                cols.push_back(std::move(col));
            }
    }
    const Matrix<K> rel = cols.empty() ? Matrix<K>(r * n, 0) : hstack(cols);
    InducedModule<K> out;
    out.proj = decompose(rel).cokernel_projection;
    out.mod.dim = out.proj.rows();
    for (std::size_t i = 0; i < R.dim; ++i) {
        const auto li = solve(nm.re_basis,
                              R.left_mult(detail::indicator<K>(R.dim, i)) * nm.re_basis);
        if (!li) throw ConsistencyError("Re is not closed under left multiplication");
        const Matrix<K> big = kron(*li, Matrix<K>::identity(n));
        const auto act = solve(out.proj.transpose(), (out.proj * big).transpose());
        if (!act) throw ConsistencyError("induced action does not descend");
        out.mod.action.push_back(act->transpose());
    }
    return out;
}

// Hom_{eRe}(eR, N) with R acting by (b.psi)(x) = psi(x*b).
template <ExactField K>
struct CoinducedModule {
    Module<K> mod;               // over R
    std::vector<Matrix<K>> sol;  // psi_k: n x dim eR, domain in er_basis coords
    Matrix<K> er_basis;          // dim R x dim eR columns spanning eR
};

template <ExactField K>
CoinducedModule<K> hom_back(const Algebra<K>& R, const std::vector<K>& e,
                            const CornerAlgebra<K>& corner, const HomReModule<K>& nm) {
    CoinducedModule<K> out;
    out.er_basis = decompose(R.left_mult(e)).image_basis;
    const std::size_t u = out.er_basis.cols(), n = nm.mod.dim, q = corner.alg.dim;

    // unknowns vec(psi) row-major; constraint psi(s_t y_j) = s_t psi(y_j)
    std::vector<Matrix<K>> rows;
    for (std::size_t t = 0; t < q; ++t) {
        const auto et = solve(out.er_basis,
                              R.left_mult(detail::col_of(corner.embed, t)) * out.er_basis);
        if (!et) throw ConsistencyError("eR is not closed under the corner action");
        const Matrix<K>& st = nm.mod.action[t];
        for (std::size_t j = 0; j < u; ++j) {
            Matrix<K> block(n, n * u);
            for (std::size_t row = 0; row < n; ++row)
                for (std::size_t col = 0; col < u; ++col)
                    block(row, row * u + col) = (*et)(col, j);
            for (std::size_t row = 0; row < n; ++row)
                for (std::size_t s = 0; s < n; ++s)
                    block(row, s * u + j) = block(row, s * u + j) - st(row, s);
            rows.push_back(std::move(block));
        }
    }
    const Matrix<K> sys = rows.empty() ? Matrix<K>(0, n * u) : vstack(rows);
    const auto ker = decompose(sys).kernel_basis;
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        Matrix<K> psi(n, u);
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t col = 0; col < u; ++col) psi(row, col) = ker(row * u + col, k);
        out.sol.push_back(std::move(psi));
    }

    out.mod.dim = out.sol.size();
    out.mod.action.assign(R.dim, Matrix<K>(out.mod.dim, out.mod.dim));
    for (std::size_t i = 0; i < R.dim; ++i) {
        const auto fi = solve(out.er_basis,
                              R.right_mult(detail::indicator<K>(R.dim, i)) * out.er_basis);
        if (!fi) throw ConsistencyError("eR is not closed under right multiplication");
        if (out.sol.empty()) continue;
        std::vector<Matrix<K>> targets;
        for (const auto& psi : out.sol) targets.push_back(psi * (*fi));
        out.mod.action[i] = detail::coords_in_span(out.sol, targets, n * u,
                                                   "module action leaves the hom space");
    }
    return out;
}

// M/(ReR.M): the largest quotient killed by e.
template <ExactField K>
struct QuotientModule {
    Module<K> mod;   // over R
    Matrix<K> proj;  // M -> mod
};

template <ExactField K>
QuotientModule<K> quotient_side(const Algebra<K>& R, const std::vector<K>& e,
                                const Module<K>& m) {
    const Matrix<K> pe = module_action_of(m, e);
    std::vector<Matrix<K>> parts;
    for (std::size_t i = 0; i < R.dim; ++i) parts.push_back(m.action[i] * pe);
    const Matrix<K> span = parts.empty() ? Matrix<K>(m.dim, 0) : hstack(parts);
    QuotientModule<K> out;
    out.proj = decompose(span).cokernel_projection;
    out.mod.dim = out.proj.rows();
    for (std::size_t i = 0; i < R.dim; ++i) {
        const auto act = solve(out.proj.transpose(), (out.proj * m.action[i]).transpose());
        if (!act) throw ConsistencyError("quotient action does not descend");
        out.mod.action.push_back(act->transpose());
    }
    return out;
}

template <ExactField K>
struct ModuleFunctorOracle {
    CornerAlgebra<K> corner;
    HomReModule<K> hom_re;
    InducedModule<K> tensor;
    CoinducedModule<K> cotensor;
    QuotientModule<K> quotient;
};

template <ExactField K>
ModuleFunctorOracle<K> module_functor_oracle(const AlgebraWithIdempotent<K>& a,
                                             const Module<K>& m) {
    if (auto bad = a.validate()) throw PreconditionError("bad algebra input: " + *bad);
    if (auto bad = validate_module(a.alg, m)) throw PreconditionError("bad module: " + *bad);
    ModuleFunctorOracle<K> out;
    out.corner = corner_algebra(a.alg, a.idem);
    out.hom_re = hom_Re(a.alg, a.idem, out.corner, m);
    out.tensor = tensor_back(a.alg, out.corner, out.hom_re);
    out.cotensor = hom_back(a.alg, a.idem, out.corner, out.hom_re);
    out.quotient = quotient_side(a.alg, a.idem, m);
    return out;
}

namespace detail {

template <ExactField K>
std::optional<Matrix<K>> inverse_of(const Matrix<K>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    return solve(m, Matrix<K>::identity(m.rows()));
}

// Everything the comparison needs about one test module, built once.
template <ExactField K>
struct ComparedModule {
    Module<K> m;
    ModuleRep<K> fr;
    Rep<K> res_f;
    ModuleFunctorOracle<K> o;
    Matrix<K> jmap, jinv;            // stacked value coords <-> M
    Matrix<K> theta, theta_inv;      // Hom_R(Re,M) coords <-> f(E) coords
    LanResult<K> lr;
    Module<K> lan_mod;
    Matrix<K> c_lan;  // oracle tensor -> lan module
    RanResult<K> rr;
    Module<K> ran_mod;
    Matrix<K> c_ran;  // ran module -> oracle cotensor
    TorsionFree<K> tf;
    Module<K> quot_mod;
    Matrix<K> c_quot;  // oracle quotient -> torsion-free module
};

}  // namespace detail

// Plays the module-side functors against the categorical recollement at
// A = {E}: dimensions must agree, the comparison maps must be invertible and
// linear over R, and the comparisons must be natural on a generating set of
// module maps.
template <ExactField K>
CheckReport compare_with_recollement(const AlgebraWithIdempotent<K>& a,
                                     const std::vector<Module<K>>& test_modules) {
    if (test_modules.empty()) throw PreconditionError("empty test module set");
    const PeirceCategory<K> P = peirce_category(a);
    const Algebra<K>& R = a.alg;
    const auto rc = make_ab_recollement<K>(P.cat, {0});

    CheckReport report;
    std::vector<std::optional<detail::ComparedModule<K>>> built(test_modules.size());

    std::vector<K> side0 = a.idem, side1(R.dim);
    for (std::size_t i = 0; i < R.dim; ++i) side1[i] = R.unit[i] - side0[i];
    const std::vector<K>* side[2] = {&side0, &side1};

    for (std::size_t idx = 0; idx < test_modules.size(); ++idx) {
        const std::string wit = "module #" + std::to_string(idx);
        detail::ComparedModule<K> cm;
        cm.m = test_modules[idx];
        if (auto bad = validate_module(R, cm.m)) {
            report.add("module_valid", false, wit + ": " + *bad);
            continue;
        }
        report.add("module_valid", true, wit);
        cm.fr = module_to_rep(P, cm.m);
        cm.res_f = restrict_rep(cm.fr.rep, rc.sub);
        cm.o = module_functor_oracle(a, cm.m);
        if (cm.o.corner.embed != P.basis[0][0])
            throw ConsistencyError("corner basis disagrees with the Peirce block basis");

        // Stacked values return the module on the nose.
        {
            const Module<K> mm = mitchell_module(P, cm.fr.rep);
            cm.jmap = hstack(std::vector<Matrix<K>>{cm.fr.basis[0], cm.fr.basis[1]});
            const auto ji = detail::inverse_of(cm.jmap);
            bool ok = (mm.dim == cm.m.dim) && ji.has_value();
            if (ok) {
                cm.jinv = *ji;
                for (std::size_t i = 0; ok && i < R.dim; ++i)
                    ok = cm.m.action[i] * cm.jmap == cm.jmap * mm.action[i];
            }
            report.add("mitchell_roundtrip", ok, wit);
            if (!ok) continue;
        }

        // e kills the module exactly when the rep lands in S_A.
        report.add("kernel_side",
                   module_action_of(cm.m, a.idem).is_zero() == in_S_A(cm.fr.rep, rc), wit);

        bool ok = true;
        std::string msg = wit;
        try {
            // Hom_R(Re, M) against the restriction, via phi -> phi(e).
            const auto e_in_re = solve(cm.o.hom_re.re_basis, detail::col_vec(a.idem));
            if (!e_in_re) throw ConsistencyError("idempotent not in Re");
            const std::size_t nn = cm.o.hom_re.mod.dim;
            Matrix<K> theta(cm.res_f.dims[0], nn);
            for (std::size_t k = 0; k < nn; ++k) {
                const auto v = solve(cm.fr.basis[0], cm.o.hom_re.sol[k] * (*e_in_re));
                if (!v) throw ConsistencyError("evaluation at e leaves eM");
                for (std::size_t rr2 = 0; rr2 < v->rows(); ++rr2) theta(rr2, k) = (*v)(rr2, 0);
            }
            cm.theta = theta;
            const auto ti = detail::inverse_of(theta);
            ok = ok && ti.has_value();
            if (ti) cm.theta_inv = *ti;
            for (std::size_t t = 0; ok && t < cm.o.corner.alg.dim; ++t)
                ok = cm.res_f.action(0, 0, t) * cm.theta ==
                     cm.theta * cm.o.hom_re.mod.action[t];
        } catch (const ConsistencyError& e2) {
            ok = false;
            msg = wit + ": " + e2.what();
        }
        report.add("hom_re_matches_restriction", ok, msg);
        if (!ok) continue;

        ok = true;
        msg = wit;
        try {
            // Re (x)_{eRe} N against the left Kan extension.
            cm.lr = lan(cm.res_f, rc.sub);
            cm.lan_mod = mitchell_module(P, cm.lr.rep);
            const std::size_t r = cm.o.hom_re.re_basis.cols(), n = cm.o.hom_re.mod.dim;
            const std::size_t dE = cm.res_f.dims[0];
            Matrix<K> w(cm.lan_mod.dim, r * n);
            const std::size_t moff[2] = {0, cm.lr.rep.dims[0]};
            for (std::size_t j = 0; j < r; ++j) {
                const auto xj = detail::col_of(cm.o.hom_re.re_basis, j);
                for (std::size_t y = 0; y < 2; ++y) {
                    const auto elem = R.multiply(*side[y], xj);
                    if (P.cat->hom_dim(0, y) == 0) {
                        for (const auto& cf : elem)
                            if (!(cf == K(0)))
                                throw ConsistencyError("Peirce block exceeds its hom space");
                        continue;
                    }
                    const auto bc = P.to_block_coords(y, 0, elem);
                    for (std::size_t k = 0; k < n; ++k) {
                        Matrix<K> big(cm.lr.big_dim[y], 1);
                        for (std::size_t phi = 0; phi < bc.size(); ++phi) {
                            if (bc[phi] == K(0)) continue;
                            for (std::size_t v = 0; v < dE; ++v)
                                big(cm.lr.offset[y][0] + phi * dE + v, 0) =
                                    bc[phi] * cm.theta(v, k);
                        }
                        const Matrix<K> down = cm.lr.proj[y] * big;
                        for (std::size_t s = 0; s < down.rows(); ++s)
                            w(moff[y] + s, j * n + k) = w(moff[y] + s, j * n + k) + down(s, 0);
                    }
                }
            }
            // descends: the balanced relations die in the coend quotient
            ok = ok && (w * decompose(cm.o.tensor.proj).kernel_basis).is_zero();
            const auto sigma =
                solve(cm.o.tensor.proj, Matrix<K>::identity(cm.o.tensor.mod.dim));
            ok = ok && sigma.has_value();
            if (ok) {
                cm.c_lan = w * (*sigma);
                ok = cm.lan_mod.dim == cm.o.tensor.mod.dim &&
                     rank(cm.c_lan) == cm.o.tensor.mod.dim;
                for (std::size_t i = 0; ok && i < R.dim; ++i)
                    ok = cm.c_lan * cm.o.tensor.mod.action[i] ==
                         cm.lan_mod.action[i] * cm.c_lan;
            }
        } catch (const ConsistencyError& e2) {
            ok = false;
            msg = wit + ": " + e2.what();
        }
        report.add("tensor_matches_lan", ok, msg);
        if (!ok) continue;

        ok = true;
        msg = wit;
        try {
            // Hom_{eRe}(eR, N) against the right Kan extension.
            cm.rr = ran(cm.res_f, rc.sub);
            cm.ran_mod = mitchell_module(P, cm.rr.rep);
            const std::size_t u = cm.o.cotensor.er_basis.cols(), n = cm.o.hom_re.mod.dim;
            std::vector<Matrix<K>> images;  // one n x u matrix per ran module basis vector
            for (std::size_t y = 0; y < 2; ++y) {
                const std::size_t g = P.cat->hom_dim(y, 0), dE = cm.res_f.dims[0];
                for (std::size_t cidx = 0; cidx < cm.rr.rep.dims[y]; ++cidx) {
                    Matrix<K> t_y(dE, g);
                    for (std::size_t wr = 0; wr < dE; ++wr)
                        for (std::size_t k = 0; k < g; ++k)
                            t_y(wr, k) =
                                cm.rr.incl[y](cm.rr.offset[y][0] + wr * g + k, cidx);
                    Matrix<K> psi(n, u);
                    for (std::size_t l = 0; l < u; ++l) {
                        const auto yl = detail::col_of(cm.o.cotensor.er_basis, l);
                        const auto elem = R.multiply(yl, *side[y]);
                        if (g == 0) {
                            for (const auto& cf : elem)
                                if (!(cf == K(0)))
                                    throw ConsistencyError(
                                        "Peirce block exceeds its hom space");
                            continue;
                        }
                        const auto bc = P.to_block_coords(0, y, elem);
                        const Matrix<K> val = cm.theta_inv * (t_y * detail::col_vec(bc));
                        for (std::size_t row = 0; row < n; ++row)
                            psi(row, l) = psi(row, l) + val(row, 0);
                    }
                    images.push_back(std::move(psi));
                }
            }
            // ran module coordinates enumerate exactly these basis vectors
            cm.c_ran = detail::coords_in_span(cm.o.cotensor.sol, images, n * u,
                                              "ran values are not corner-linear");
            ok = cm.ran_mod.dim == cm.o.cotensor.mod.dim &&
                 rank(cm.c_ran) == cm.ran_mod.dim;
            for (std::size_t i = 0; ok && i < R.dim; ++i)
                ok = cm.c_ran * cm.ran_mod.action[i] ==
                     cm.o.cotensor.mod.action[i] * cm.c_ran;
        } catch (const ConsistencyError& e2) {
            ok = false;
            msg = wit + ": " + e2.what();
        }
        report.add("homback_matches_ran", ok, msg);
        if (!ok) continue;

        ok = true;
        msg = wit;
        try {
            // M/(ReR.M) against the torsion-free quotient.
            cm.tf = torsion_free(cm.fr.rep, rc);
            cm.quot_mod = mitchell_module(P, cm.tf.rep);
            const Matrix<K> down = mitchell_map(cm.tf.proj) * cm.jinv;
            const auto cq = solve(cm.o.quotient.proj.transpose(), down.transpose());
            ok = ok && cq.has_value();
            if (ok) {
                cm.c_quot = cq->transpose();
                ok = cm.quot_mod.dim == cm.o.quotient.mod.dim &&
                     rank(cm.c_quot) == cm.quot_mod.dim;
                for (std::size_t i = 0; ok && i < R.dim; ++i)
                    ok = cm.c_quot * cm.o.quotient.mod.action[i] ==
                         cm.quot_mod.action[i] * cm.c_quot;
            }
        } catch (const ConsistencyError& e2) {
            ok = false;
            msg = wit + ": " + e2.what();
        }
        report.add("quotient_matches_torsionfree", ok, msg);
        if (!ok) continue;

        built[idx] = std::move(cm);
    }

    // Naturality of every comparison on a generating set of module maps.
    for (std::size_t ai = 0; ai < test_modules.size(); ++ai) {
        if (!built[ai]) continue;
        for (std::size_t bi = 0; bi < test_modules.size(); ++bi) {
            if (!built[bi]) continue;
            const auto& A = *built[ai];
            const auto& B = *built[bi];
            const auto gens = hom_modules(R, A.m, B.m);
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                const std::string wit = "modules #" + std::to_string(ai) + "->#" +
                                        std::to_string(bi) + " map #" + std::to_string(gi);
                bool ok = true;
                std::string msg = wit;
                try {
                    const Matrix<K>& g = gens[gi];
                    const auto g_nat = module_map_nat(A.fr, B.fr, g);
                    const auto res_g = restrict_nat(g_nat, rc.sub);

                    std::vector<Matrix<K>> targets;
                    for (const auto& phi : A.o.hom_re.sol) targets.push_back(g * phi);
                    const Matrix<K> ng = detail::coords_in_span(
                        B.o.hom_re.sol, targets, B.m.dim * B.o.hom_re.re_basis.cols(),
                        "postcomposition leaves the hom space");
                    ok = ok && B.theta * ng == res_g.comps[0] * A.theta;

                    const std::size_t n_b = B.o.hom_re.mod.dim;
                    const std::size_t r = A.o.hom_re.re_basis.cols();
                    const Matrix<K> big = kron(Matrix<K>::identity(r), ng);
                    const auto tg =
                        solve(A.o.tensor.proj.transpose(), (B.o.tensor.proj * big).transpose());
                    if (!tg) throw ConsistencyError("induced map does not descend");
                    const Matrix<K> lan_g =
                        mitchell_map(lan_nat(res_g, A.lr, B.lr));
                    ok = ok && B.c_lan * tg->transpose() == lan_g * A.c_lan;

                    std::vector<Matrix<K>> htargets;
                    for (const auto& psi : A.o.cotensor.sol) htargets.push_back(ng * psi);
                    const Matrix<K> hg = detail::coords_in_span(
                        B.o.cotensor.sol, htargets, n_b * B.o.cotensor.er_basis.cols(),
                        "postcomposition leaves the hom space");
                    const Matrix<K> ran_g = mitchell_map(ran_nat(res_g, A.rr, B.rr));
                    ok = ok && B.c_ran * ran_g == hg * A.c_ran;

                    const auto qg =
                        solve(A.o.quotient.proj.transpose(), (B.o.quotient.proj * g).transpose());
                    if (!qg) throw ConsistencyError("quotient map does not descend");
                    const Matrix<K> quot_g =
                        mitchell_map(torsion_free_nat(g_nat, A.tf, B.tf));
                    ok = ok && B.c_quot * qg->transpose() == quot_g * A.c_quot;
                } catch (const ConsistencyError& e2) {
                    ok = false;
                    msg = wit + ": " + e2.what();
                }
                report.add("naturality", ok, msg);
            }
        }
    }
    return report;
}

}  // namespace recollem
