#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "complexes.hpp"
#include "field.hpp"
#include "lincat.hpp"
#include "matrix.hpp"
#include "rep.hpp"

namespace recollem {

// Deterministic PRNG (splitmix64).  The standard engines are reproducible but
// the standard distributions are not specified bit-for-bit, so sampling is
// done by hand; identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    // Fork an independent stream; keeps nested generators decoupled from the
    // draw order of the caller.
    Rng fork() { return Rng(next() ^ 0xd1b54a32d192ed03ull); }

private:
    std::uint64_t s_;
};

// Small scalar suitable for structure constants and test matrices.
template <ExactField K>
K random_scalar(Rng& rng, const FieldSpec& spec) {
    if constexpr (std::same_as<K, Fp>) {
        return Fp::make(rng.int_in(0, 4), spec.p);
    } else {
        if (rng.chance(1, 5)) return K(rng.int_in(-3, 3)) / K(rng.int_in(1, 3));
        return K(rng.int_in(-3, 3));
    }
}

template <ExactField K>
Matrix<K> random_matrix(Rng& rng, const FieldSpec& spec, std::size_t rows, std::size_t cols) {
    Matrix<K> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar<K>(rng, spec);
    return m;
}

// Random finite k-linear category: the path category of a random acyclic
// quiver on up to 4 vertices, occasionally with a zero relation on a length-2
// path.  Hom dimensions are kept at most 2 by rejection, so every sample is a
// valid category with desk-sized hom spaces.
template <ExactField K>
LinCatPtr<K> random_category(Rng& rng, const FieldSpec& /*spec*/) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
        Quiver<K> q;
        for (std::size_t v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
        std::vector<std::vector<std::size_t>> adj(n, std::vector<std::size_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const std::uint64_t roll = rng.below(10);
                const std::size_t count = roll < 6 ? 0 : (roll < 9 ? 1 : 2);
                adj[i][j] = count;
                for (std::size_t t = 0; t < count; ++t)
                    q.arrows.push_back(QuiverArrow{q.vertices[i], q.vertices[j],
                                                   "a" + std::to_string(i + 1) + "_" +
                                                       std::to_string(j + 1) +
                                                       (t ? "_p" : "")});
            }
        // path counts: sum of adjacency powers (nilpotent, so n terms suffice)
        std::vector<std::vector<std::size_t>> paths(n, std::vector<std::size_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) paths[i][i] = 1;
        std::vector<std::vector<std::size_t>> pw = paths;  // adj^k accumulator
        bool small = true;
        for (std::size_t step = 1; step < n && small; ++step) {
            std::vector<std::vector<std::size_t>> nx(n, std::vector<std::size_t>(n, 0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t j = 0; j < n; ++j) nx[i][j] += pw[i][k] * adj[k][j];
            pw = nx;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    paths[i][j] += pw[i][j];
                    if (paths[i][j] > 2) small = false;
                }
        }
        if (!small) continue;
        // occasional zero relation on a composable arrow pair
        if (rng.chance(1, 3)) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t x = 0; x < q.arrows.size(); ++x)
                for (std::size_t y = 0; y < q.arrows.size(); ++y)
                    if (q.arrows[x].to == q.arrows[y].from) pairs.emplace_back(x, y);
            if (!pairs.empty()) {
                const auto [x, y] = pairs[rng.below(pairs.size())];
                QuiverRelation<K> rel;
                rel.terms.push_back({{q.arrows[x].label, q.arrows[y].label}, K(1)});
                q.relations.push_back(std::move(rel));
            }
        }
        q.nilpotency_bound = n + 1;
        return std::make_shared<const LinCat<K>>(from_quiver(q));
    }
    // unreachable in practice; a two-object chain always qualifies
    Quiver<K> q;
    q.vertices = {"1", "2"};
    q.arrows = {QuiverArrow{"1", "2", "a"}};
    q.nilpotency_bound = 3;
    return std::make_shared<const LinCat<K>>(from_quiver(q));
}

// Random rep with every dimension at most max_dim: a kernel or cokernel of a
// random map between direct sums of representables, so functoriality holds by
// construction.
template <ExactField K>
Rep<K> random_rep(Rng& rng, const FieldSpec& spec, LinCatPtr<K> cat, std::size_t max_dim = 3) {
    const std::size_t n = cat->num_objects();
    for (int attempt = 0; attempt < 48; ++attempt) {
        const std::size_t nsrc = static_cast<std::size_t>(rng.int_in(1, 2));
        const std::size_t ntgt = static_cast<std::size_t>(rng.int_in(1, 2));
        std::vector<Rep<K>> src_parts, tgt_parts;
        for (std::size_t i = 0; i < nsrc; ++i)
            src_parts.push_back(representable(cat, rng.below(n)));
        for (std::size_t i = 0; i < ntgt; ++i)
            tgt_parts.push_back(representable(cat, rng.below(n)));
        const Rep<K> src = direct_sum_reps(src_parts).rep;
        const Rep<K> tgt = direct_sum_reps(tgt_parts).rep;
        const auto basis = hom_space(src, tgt);
        NatTrans<K> f = zero_nat(src, tgt);
        for (const auto& b : basis)
            f = add_nat(f, scale_nat(random_scalar<K>(rng, spec), b));
        const Rep<K> candidate = rng.chance(1, 2) ? kernel(f).rep : cokernel(f).rep;
        bool ok = true;
        for (std::size_t d : candidate.dims)
            if (d > max_dim) ok = false;
        if (candidate.total_dim() == 0 && attempt < 40) ok = false;
        if (ok) return candidate;
    }
    return representable(cat, rng.below(n));
}

// Random bounded complex over a short degree window.  Differentials are built
// from the top down: each one is drawn from the kernel of composition with the
// differential above it, so d*d = 0 holds exactly.
template <ExactField K>
Complex<K> random_complex(Rng& rng, const FieldSpec& spec, LinCatPtr<K> cat,
                          std::size_t max_dim = 3) {
    const int lo = static_cast<int>(rng.int_in(-2, 1));
    const int span = static_cast<int>(rng.int_in(1, 3));
    Complex<K> x;
    x.cat = cat;
    for (int n = lo; n < lo + span; ++n) {
        Rep<K> t = random_rep(rng, spec, cat, max_dim);
        if (t.total_dim() > 0) x.terms.emplace(n, std::move(t));
    }
    for (int n = lo + span - 1; n > lo; --n) {
        const Rep<K> here = x.term(n), below = x.term(n - 1);
        if (here.total_dim() == 0 || below.total_dim() == 0) continue;
        const auto basis = hom_space(here, below);
        if (basis.empty()) continue;
        Matrix<K> constraint(0, basis.size());
        if (x.diff.count(n + 1)) {
            const auto& up = x.diff.at(n + 1);
            const auto target = hom_space(x.term(n + 1), below);
            constraint = Matrix<K>(target.size(), basis.size());
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const auto coords = nat_coords(target, compose_nat(up, basis[j]));
                for (std::size_t r = 0; r < coords.size(); ++r) constraint(r, j) = coords[r];
            }
        }
        const Matrix<K> ker = decompose(constraint).kernel_basis;
        if (ker.cols() == 0) continue;
        NatTrans<K> d = zero_nat(here, below);
        for (std::size_t c = 0; c < ker.cols(); ++c) {
            const K coef = random_scalar<K>(rng, spec);
            for (std::size_t j = 0; j < basis.size(); ++j)
                d = add_nat(d, scale_nat(coef * ker(j, c), basis[j]));
        }
        if (!nat_is_zero(d)) x.diff.emplace(n, std::move(d));
    }
    return x;
}

// Random chain map x -> y: a random element of the kernel of the stacked
// commutation constraints over all hom spaces in the window.
template <ExactField K>
ChainMap<K> random_chain_map(Rng& rng, const FieldSpec& spec, const Complex<K>& x,
                             const Complex<K>& y) {
    const auto [xlo, xhi] = support(x);
    const auto [ylo, yhi] = support(y);
    ChainMap<K> f{x, y, {}};
    if (xlo > xhi || ylo > yhi) return f;
    const int lo = std::min(xlo, ylo), hi = std::max(xhi, yhi);

    std::map<int, std::vector<NatTrans<K>>> basis;
    std::map<int, std::size_t> off;
    std::size_t total = 0;
    for (int n = lo; n <= hi; ++n) {
        basis.emplace(n, hom_space(x.term(n), y.term(n)));
        off[n] = total;
        total += basis.at(n).size();
    }
    if (total == 0) return f;

    std::vector<Matrix<K>> blocks;
    for (int n = lo; n <= hi + 1; ++n) {
        const auto target = hom_space(x.term(n), y.term(n - 1));
        if (target.empty()) continue;
        Matrix<K> block(target.size(), total);
        if (basis.count(n))
            for (std::size_t j = 0; j < basis.at(n).size(); ++j) {
                const auto c = nat_coords(target, compose_nat(basis.at(n)[j], y.d(n)));
                for (std::size_t r = 0; r < c.size(); ++r) block(r, off.at(n) + j) = c[r];
            }
        if (basis.count(n - 1))
            for (std::size_t j = 0; j < basis.at(n - 1).size(); ++j) {
                const auto c = nat_coords(target, compose_nat(x.d(n), basis.at(n - 1)[j]));
                for (std::size_t r = 0; r < c.size(); ++r)
                    block(r, off.at(n - 1) + j) = block(r, off.at(n - 1) + j) - c[r];
            }
        blocks.push_back(std::move(block));
    }
    Matrix<K> sys = blocks.empty() ? Matrix<K>(0, total) : vstack(blocks);
    const Matrix<K> ker = decompose(sys).kernel_basis;
    if (ker.cols() == 0) return f;

    std::vector<K> coords(total, K(0));
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        const K coef = random_scalar<K>(rng, spec);
        for (std::size_t j = 0; j < total; ++j) coords[j] = coords[j] + coef * ker(j, c);
    }
    for (int n = lo; n <= hi; ++n) {
        if (basis.at(n).empty()) continue;
        NatTrans<K> t = zero_nat(x.term(n), y.term(n));
        for (std::size_t j = 0; j < basis.at(n).size(); ++j)
            t = add_nat(t, scale_nat(coords[off.at(n) + j], basis.at(n)[j]));
        if (!nat_is_zero(t)) f.comps.emplace(n, std::move(t));
    }
    return f;
}

}  // namespace recollem
