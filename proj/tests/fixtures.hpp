#pragma once

// Shared in-memory fixtures for the test suite.  The committed JSON fixture
// files are cross-checked against these constructions in the serialization
// tests, so the two never drift apart.

#include <memory>

#include "recollem/lincat.hpp"

namespace fixtures {

using recollem::Algebra;
using recollem::AlgebraWithIdempotent;
using recollem::ExactField;
using recollem::from_quiver;
using recollem::LinCat;
using recollem::LinCatPtr;
using recollem::Quiver;
using recollem::QuiverArrow;
using recollem::QuiverRelation;

// 1 --a--> 2
template <ExactField K>
LinCatPtr<K> a2() {
    Quiver<K> q;
    q.vertices = {"1", "2"};
    q.arrows = {QuiverArrow{"1", "2", "a"}};
    q.nilpotency_bound = 3;
    return std::make_shared<const LinCat<K>>(from_quiver(q));
}

// 1 --a--> 2 --b--> 3, free
template <ExactField K>
LinCatPtr<K> a3() {
    Quiver<K> q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {QuiverArrow{"1", "2", "a"}, QuiverArrow{"2", "3", "b"}};
    q.nilpotency_bound = 4;
    return std::make_shared<const LinCat<K>>(from_quiver(q));
}

// 1 --a--> 2 --b--> 3 with the composite killed
template <ExactField K>
LinCatPtr<K> a3rel() {
    Quiver<K> q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {QuiverArrow{"1", "2", "a"}, QuiverArrow{"2", "3", "b"}};
    QuiverRelation<K> rel;
    rel.terms.push_back({{"a", "b"}, K(1)});
    q.relations = {rel};
    q.nilpotency_bound = 4;
    return std::make_shared<const LinCat<K>>(from_quiver(q));
}

// one object with a square-zero loop
template <ExactField K>
LinCatPtr<K> dual_numbers() {
    Quiver<K> q;
    q.vertices = {"1"};
    q.arrows = {QuiverArrow{"1", "1", "x"}};
    QuiverRelation<K> rel;
    rel.terms.push_back({{"x", "x"}, K(1)});
    q.relations = {rel};
    q.nilpotency_bound = 3;
    return std::make_shared<const LinCat<K>>(from_quiver(q));
}

// upper-triangular 2x2 matrices, basis {E11, E12, E22}, idempotent E11
template <ExactField K>
AlgebraWithIdempotent<K> ut2() {
    const std::size_t d = 3;
    std::vector<K> mult(d * d * d, K(0));
    auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
        mult[(i * d + j) * d + k] = K(1);
    };
    set(0, 0, 0);  // E11 E11 = E11
    set(0, 1, 1);  // E11 E12 = E12
    set(1, 2, 1);  // E12 E22 = E12
    set(2, 2, 2);  // E22 E22 = E22
    Algebra<K> alg = Algebra<K>::make(d, std::move(mult), {K(1), K(0), K(1)});
    return AlgebraWithIdempotent<K>{std::move(alg), {K(1), K(0), K(0)}};
}

// k x k, idempotent (1, 0)
template <ExactField K>
AlgebraWithIdempotent<K> kxk() {
    std::vector<K> mult(8, K(0));
    mult[(0 * 2 + 0) * 2 + 0] = K(1);
    mult[(1 * 2 + 1) * 2 + 1] = K(1);
    Algebra<K> alg = Algebra<K>::make(2, std::move(mult), {K(1), K(1)});
    return AlgebraWithIdempotent<K>{std::move(alg), {K(1), K(0)}};
}

}  // namespace fixtures
