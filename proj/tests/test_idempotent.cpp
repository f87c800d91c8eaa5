#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "fixtures.hpp"
#include "recollem/idempotent.hpp"
#include "recollem/randomgen.hpp"

using namespace recollem;

namespace {

// one-dimensional ut2 module where only the chosen diagonal idempotent acts
Module<Rational> ut2_simple(std::size_t which) {
    Module<Rational> m{1, {}};
    m.action.assign(3, Matrix<Rational>(1, 1));
    m.action[which == 0 ? 0 : 2](0, 0) = Rational(1);
    return m;
}

bool modules_isomorphic(const Algebra<Rational>& r, const Module<Rational>& a,
                        const Module<Rational>& b, std::uint64_t seed) {
    if (a.dim != b.dim) return false;
    const auto basis = hom_modules(r, a, b);
    if (a.dim == 0) return true;
    for (const auto& g : basis)
        if (rank(g) == a.dim) return true;
    Rng rng(seed);
    for (int trial = 0; trial < 64; ++trial) {
        Matrix<Rational> g(b.dim, a.dim);
        for (const auto& h : basis) g = g + Rational(rng.int_in(-2, 2)) * h;
        if (rank(g) == a.dim) return true;
    }
    return false;
}

void require_clean_report(const CheckReport& rep) {
    for (const auto& c : rep.clauses) {
        INFO(c.name << ": " << c.witness);
        CHECK(c.ok);
    }
    REQUIRE(rep.ok());
}

AlgebraWithIdempotent<Fp> pin_mod(AlgebraWithIdempotent<Fp> a, std::uint32_t p) {
    for (auto& c : a.alg.mult) c = c + Fp::make(0, p);
    for (auto& c : a.alg.unit) c = c + Fp::make(0, p);
    for (auto& c : a.idem) c = c + Fp::make(0, p);
    return a;
}

}  // namespace

TEST_CASE("module validation and the regular module") {
    const auto a = fixtures::ut2<Rational>();
    const auto reg = regular_module(a.alg);
    CHECK(reg.dim == 3);
    CHECK(!validate_module(a.alg, reg));

    auto broken = reg;
    broken.action[1](0, 0) = Rational(1);
    CHECK(validate_module(a.alg, broken).has_value());

    auto wrong_unit = reg;
    wrong_unit.action[0] = Matrix<Rational>(3, 3);
    CHECK(validate_module(a.alg, wrong_unit).has_value());
}

TEST_CASE("left ideal modules of ut2") {
    const auto a = fixtures::ut2<Rational>();
    std::vector<Rational> one_minus_e = {Rational(0), Rational(0), Rational(1)};

    const auto re = left_ideal_module(a.alg, a.idem);
    CHECK(re.mod.dim == 1);
    CHECK(!validate_module(a.alg, re.mod));

    const auto rf = left_ideal_module(a.alg, one_minus_e);
    CHECK(rf.mod.dim == 2);
    CHECK(!validate_module(a.alg, rf.mod));

    // Re is the simple projective supported at the idempotent
    CHECK(modules_isomorphic(a.alg, re.mod, ut2_simple(0), 11));
    CHECK(!modules_isomorphic(a.alg, rf.mod, ut2_simple(1), 12));
    CHECK(hom_modules(a.alg, re.mod, rf.mod).size() == 1);
    CHECK(hom_modules(a.alg, rf.mod, re.mod).empty());
}

TEST_CASE("mitchell modules of representables") {
    const auto a = fixtures::ut2<Rational>();
    const auto pc = peirce_category(a);
    std::vector<Rational> one_minus_e = {Rational(0), Rational(0), Rational(1)};

    const auto z = mitchell_module(pc, zero_rep<Rational>(pc.cat));
    CHECK(z.dim == 0);
    CHECK(!validate_module(a.alg, z));

    const auto me = mitchell_module(pc, representable<Rational>(pc.cat, 0));
    CHECK(me.dim == 1);
    CHECK(!validate_module(a.alg, me));
    CHECK(modules_isomorphic(a.alg, me, left_ideal_module(a.alg, a.idem).mod, 21));

    const auto mf = mitchell_module(pc, representable<Rational>(pc.cat, 1));
    CHECK(mf.dim == 2);
    CHECK(!validate_module(a.alg, mf));
    CHECK(modules_isomorphic(a.alg, mf, left_ideal_module(a.alg, one_minus_e).mod, 22));

    const auto other = fixtures::kxk<Rational>();
    const auto qc = peirce_category(other);
    CHECK_THROWS_AS(mitchell_module(qc, representable<Rational>(pc.cat, 0)),
                    PreconditionError);
}

TEST_CASE("mitchell is an equivalence on random representations") {
    const auto a = fixtures::ut2<Rational>();
    const auto pc = peirce_category(a);
    const auto spec = FieldSpec::rationals();

    for (std::uint64_t seed = 6100; seed < 6106; ++seed) {
        Rng rng(seed);
        const auto f = random_rep<Rational>(rng, spec, pc.cat, 2);
        const auto g = random_rep<Rational>(rng, spec, pc.cat, 2);
        const auto mf = mitchell_module(pc, f);
        const auto mg = mitchell_module(pc, g);
        CHECK(mf.dim == f.dims[0] + f.dims[1]);
        CHECK(!validate_module(a.alg, mf));

        // stacked coordinates give back the representation on the nose
        const auto back = module_to_rep(pc, mf);
        REQUIRE(back.rep.dims == f.dims);
        for (std::size_t x = 0; x < 2; ++x)
            for (std::size_t y = 0; y < 2; ++y)
                for (std::size_t i = 0; i < pc.cat->hom_dim(x, y); ++i)
                    CHECK(back.rep.action(x, y, i) == f.action(x, y, i));

        // full faithfulness on hom spaces
        const auto nat_basis = hom_space(f, g);
        CHECK(nat_basis.size() == hom_modules(a.alg, mf, mg).size());
        const auto fr = module_to_rep(pc, mf);
        const auto gr = module_to_rep(pc, mg);
        for (const auto& t : nat_basis) {
            const Matrix<Rational> m = mitchell_map(t);
            for (std::size_t i = 0; i < a.alg.dim; ++i)
                CHECK(m * mf.action[i] == mg.action[i] * m);
            const auto round = module_map_nat(fr, gr, m);
            CHECK(round.comps[0] == t.comps[0]);
            CHECK(round.comps[1] == t.comps[1]);
        }
    }
}

TEST_CASE("gluing functor dimensions on ut2") {
    const auto a = fixtures::ut2<Rational>();
    std::vector<Rational> one_minus_e = {Rational(0), Rational(0), Rational(1)};

    struct Row {
        Module<Rational> m;
        std::size_t hom_re, tensor, cotensor, quotient;
    };
    const std::vector<Row> table = {
        {regular_module(a.alg), 2, 2, 4, 1},
        {left_ideal_module(a.alg, a.idem).mod, 1, 1, 2, 0},
        {left_ideal_module(a.alg, one_minus_e).mod, 1, 1, 2, 1},
        {ut2_simple(0), 1, 1, 2, 0},
        {ut2_simple(1), 0, 0, 0, 1},
    };
    for (std::size_t i = 0; i < table.size(); ++i) {
        INFO("module #" << i);
        const auto o = module_functor_oracle(a, table[i].m);
        CHECK(o.corner.alg.dim == 1);
        CHECK(o.hom_re.mod.dim == table[i].hom_re);
        CHECK(o.tensor.mod.dim == table[i].tensor);
        CHECK(o.cotensor.mod.dim == table[i].cotensor);
        CHECK(o.quotient.mod.dim == table[i].quotient);
        CHECK(!validate_module(o.corner.alg, o.hom_re.mod));
        CHECK(!validate_module(a.alg, o.tensor.mod));
        CHECK(!validate_module(a.alg, o.cotensor.mod));
        CHECK(!validate_module(a.alg, o.quotient.mod));
    }

    auto bad = regular_module(a.alg);
    bad.action[1](0, 0) = Rational(1);
    CHECK_THROWS_AS(module_functor_oracle(a, bad), PreconditionError);
}

TEST_CASE("comparison with the categorical recollement: ut2") {
    const auto a = fixtures::ut2<Rational>();
    std::vector<Rational> one_minus_e = {Rational(0), Rational(0), Rational(1)};
    const std::vector<Module<Rational>> mods = {
        regular_module(a.alg),
        left_ideal_module(a.alg, a.idem).mod,
        left_ideal_module(a.alg, one_minus_e).mod,
        ut2_simple(0),
        ut2_simple(1),
    };
    require_clean_report(compare_with_recollement(a, mods));
    CHECK_THROWS_AS(compare_with_recollement(a, std::vector<Module<Rational>>{}),
                    PreconditionError);
}

TEST_CASE("comparison with the categorical recollement: product of fields") {
    const auto a = fixtures::kxk<Rational>();
    std::vector<Rational> other = {Rational(0), Rational(1)};
    const std::vector<Module<Rational>> mods = {
        regular_module(a.alg),
        left_ideal_module(a.alg, a.idem).mod,
        left_ideal_module(a.alg, other).mod,
    };
    require_clean_report(compare_with_recollement(a, mods));
}

TEST_CASE("comparison with a trivial idempotent") {
    auto a = fixtures::ut2<Rational>();
    a.idem = a.alg.unit;  // corner is the whole algebra, quotient side vanishes
    const std::vector<Module<Rational>> mods = {
        regular_module(a.alg),
        ut2_simple(0),
        ut2_simple(1),
    };
    const auto rep = compare_with_recollement(a, mods);
    require_clean_report(rep);
    for (const auto& m : mods) {
        const auto o = module_functor_oracle(a, m);
        CHECK(o.corner.alg.dim == 3);
        CHECK(o.hom_re.mod.dim == m.dim);
        CHECK(o.tensor.mod.dim == m.dim);
        CHECK(o.cotensor.mod.dim == m.dim);
        CHECK(o.quotient.mod.dim == 0);
    }
}

TEST_CASE("comparison on random mitchell modules") {
    const auto a = fixtures::ut2<Rational>();
    const auto pc = peirce_category(a);
    const auto spec = FieldSpec::rationals();
    for (std::uint64_t seed = 6200; seed < 6203; ++seed) {
        Rng rng(seed);
        std::vector<Module<Rational>> mods;
        for (int i = 0; i < 2; ++i)
            mods.push_back(mitchell_module(pc, random_rep<Rational>(rng, spec, pc.cat, 2)));
        mods.push_back(ut2_simple(1));
        require_clean_report(compare_with_recollement(a, mods));
    }
}

TEST_CASE("comparison over a prime field") {
    const auto a = pin_mod(fixtures::ut2<Fp>(), 5);
    std::vector<Fp> one_minus_e = {Fp::make(0, 5), Fp::make(0, 5), Fp::make(1, 5)};
    const std::vector<Module<Fp>> mods = {
        regular_module(a.alg),
        left_ideal_module(a.alg, a.idem).mod,
        left_ideal_module(a.alg, one_minus_e).mod,
    };
    const auto rep = compare_with_recollement(a, mods);
    for (const auto& c : rep.clauses) {
        INFO(c.name << ": " << c.witness);
        CHECK(c.ok);
    }
    REQUIRE(rep.ok());
}
