#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "recollem/kan.hpp"
#include "recollem/randomgen.hpp"

using namespace recollem;

namespace {

// one-object subcategory value: the constant k
Rep<Rational> point_rep(const Subcat<Rational>& sub) {
    Rep<Rational> f = make_zero_shaped_rep<Rational>(sub.cat, {1});
    const std::size_t d = sub.cat->hom_dim(0, 0);
    const auto& idc = sub.cat->identity_coords(0);
    for (std::size_t i = 0; i < d; ++i) f.act[{0, 0}][i] = Matrix<Rational>::from({{0}});
    for (std::size_t i = 0; i < d; ++i)
        if (!(idc[i] == Rational(0))) f.act[{0, 0}][i](0, 0) = idc[i];
    return f;
}

template <ExactField K>
NatTrans<K> sample_nat(Rng& rng, const FieldSpec& spec, const Rep<K>& x, const Rep<K>& y) {
    const auto basis = hom_space(x, y);
    if (basis.empty()) return zero_nat(x, y);
    NatTrans<K> t = zero_nat(x, y);
    for (const auto& b : basis) t = add_nat(t, scale_nat(random_scalar<K>(rng, spec), b));
    return t;
}

Subcat<Rational> random_sub(Rng& rng, LinCatPtr<Rational> cat) {
    const std::size_t n = cat->num_objects();
    std::vector<std::size_t> objs;
    for (std::size_t i = 0; i < n; ++i)
        if (rng.chance(1, 2)) objs.push_back(i);
    if (objs.empty()) objs.push_back(rng.below(n));
    return full_subcategory<Rational>(std::move(cat), std::move(objs));
}

}  // namespace

TEST_CASE("restrict: dims, actions, and exactness") {
    const auto c = fixtures::a2<Rational>();
    const auto sub = full_subcategory<Rational>(c, {1});
    const auto p1 = representable<Rational>(c, 0);
    const auto p2 = representable<Rational>(c, 1);

    const auto r1 = restrict_rep(p1, sub);
    CHECK(r1.dims == std::vector<std::size_t>({1}));
    CHECK(!validate_rep(r1));
    const auto r2 = restrict_rep(p2, sub);
    CHECK(r2.dims == std::vector<std::size_t>({1}));

    // restriction commutes with kernels and cokernels bit-for-bit
    const auto basis = hom_space(p2, p1);
    REQUIRE(basis.size() == 1);
    const auto& f = basis.front();
    const auto rf = restrict_nat(f, sub);
    CHECK(!validate_nat(rf));
    CHECK(kernel(rf).rep == restrict_rep(kernel(f).rep, sub));
    CHECK(cokernel(rf).rep == restrict_rep(cokernel(f).rep, sub));
}

TEST_CASE("lan: values on the two-object chain") {
    const auto c = fixtures::a2<Rational>();
    {
        const auto sub = full_subcategory<Rational>(c, {1});  // A = {2}
        const auto lr = lan(point_rep(sub), sub);
        CHECK(lr.rep.dims == std::vector<std::size_t>({0, 1}));
        CHECK(!validate_rep(lr.rep));
    }
    {
        const auto sub = full_subcategory<Rational>(c, {0});  // A = {1}
        const auto lr = lan(point_rep(sub), sub);
        CHECK(lr.rep.dims == std::vector<std::size_t>({1, 1}));
        CHECK(!validate_rep(lr.rep));
        CHECK(rank(lr.rep.action(0, 1, 0)) == 1);
    }
}

TEST_CASE("lan: coend readout on the free three-object chain") {
    const auto c = fixtures::a3<Rational>();
    const auto sub = full_subcategory<Rational>(c, {2});  // A = {3}
    const auto lr = lan(point_rep(sub), sub);
    CHECK(lr.rep.dims == std::vector<std::size_t>({0, 0, 1}));
}

TEST_CASE("ran: values on the two-object chain") {
    const auto c = fixtures::a2<Rational>();
    {
        const auto sub = full_subcategory<Rational>(c, {1});  // A = {2}
        const auto rr = ran(point_rep(sub), sub);
        CHECK(rr.rep.dims == std::vector<std::size_t>({1, 1}));
        CHECK(!validate_rep(rr.rep));
        CHECK(rank(rr.rep.action(0, 1, 0)) == 1);
    }
    {
        const auto sub = full_subcategory<Rational>(c, {0});  // A = {1}
        const auto rr = ran(point_rep(sub), sub);
        CHECK(rr.rep.dims == std::vector<std::size_t>({1, 0}));
        CHECK(!validate_rep(rr.rep));
    }
}

TEST_CASE("counit: iso on representables from the subcategory") {
    const LinCatPtr<Rational> cats[] = {fixtures::a2<Rational>(), fixtures::a3rel<Rational>()};
    for (const auto& c : cats)
        for (std::size_t a = 0; a < c->num_objects(); ++a) {
            // every subcategory containing a makes eps at repr(a) an iso
            for (std::size_t other = 0; other < c->num_objects(); ++other) {
                std::vector<std::size_t> objs = {a};
                if (other != a) objs.push_back(other);
                const auto sub = full_subcategory<Rational>(c, objs);
                const auto x = representable<Rational>(c, a);
                const auto lr = lan(restrict_rep(x, sub), sub);
                const auto eps = counit_eps(lr, x);
                CHECK(!validate_nat(eps));
                CHECK(nat_is_iso(eps));
            }
        }
}

TEST_CASE("counit and unit at repr(1) for A = {2}") {
    const auto c = fixtures::a2<Rational>();
    const auto sub = full_subcategory<Rational>(c, {1});
    const auto x = representable<Rational>(c, 0);

    const auto lr = lan(restrict_rep(x, sub), sub);
    const auto eps = counit_eps(lr, x);
    // lan(restrict repr(1)) is repr(2)-shaped; eps is the canonical nonzero map
    CHECK(eps.src.dims == std::vector<std::size_t>({0, 1}));
    CHECK(!validate_nat(eps));
    CHECK(!nat_is_zero(eps));
    CHECK(rank(eps.comps[1]) == 1);

    const auto rr = ran(restrict_rep(x, sub), sub);
    const auto eta = unit_eta(rr, x);
    CHECK(!validate_nat(eta));
    CHECK(nat_is_iso(eta));
}

TEST_CASE("full subcategory equal to everything: both adjoints are identities") {
    const auto c = fixtures::a3rel<Rational>();
    const auto sub = full_subcategory<Rational>(c, {0, 1, 2});
    Rng rng(5);
    const auto x = random_rep<Rational>(rng, FieldSpec::rationals(), c);

    const auto lr = lan(restrict_rep(x, sub), sub);
    CHECK(nat_is_iso(counit_eps(lr, x)));
    const auto rr = ran(restrict_rep(x, sub), sub);
    CHECK(nat_is_iso(unit_eta(rr, x)));
}

TEST_CASE("triangle identities hold exactly on fixtures") {
    const auto c = fixtures::a3rel<Rational>();
    for (std::vector<std::size_t> objs : {std::vector<std::size_t>{0},
                                          std::vector<std::size_t>{2},
                                          std::vector<std::size_t>{0, 2},
                                          std::vector<std::size_t>{1, 2}}) {
        const auto sub = full_subcategory<Rational>(c, objs);
        Rng rng(17 + objs.size());
        const auto x = random_rep<Rational>(rng, FieldSpec::rationals(), c);
        const auto f = random_rep<Rational>(rng, FieldSpec::rationals(), sub.cat);
        const auto report = check_triangles(sub, x, f);
        CHECK(report.lan_triangle_parent);
        CHECK(report.lan_triangle_sub);
        CHECK(report.ran_triangle_parent);
        CHECK(report.ran_triangle_sub);
        CHECK(report.mu_iso);
        CHECK(report.nu_iso);
    }
}

TEST_CASE("triangle identities hold across random instances") {
    const FieldSpec q = FieldSpec::rationals();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Rng rng(seed * 313);
        const auto cat = random_category<Rational>(rng, q);
        const auto sub = random_sub(rng, cat);
        const auto x = random_rep<Rational>(rng, q, cat);
        const auto f = random_rep<Rational>(rng, q, sub.cat);
        CHECK(check_triangles(sub, x, f).all());
    }
}

TEST_CASE("adjunction dimension laws across random instances") {
    const FieldSpec q = FieldSpec::rationals();
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        Rng rng(seed * 811 + 3);
        const auto cat = random_category<Rational>(rng, q);
        const auto sub = random_sub(rng, cat);
        const auto g = random_rep<Rational>(rng, q, cat);
        const auto f = random_rep<Rational>(rng, q, sub.cat);

        const auto lf = lan(f, sub);
        CHECK(!validate_rep(lf.rep));
        CHECK(hom_space(lf.rep, g).size() == hom_space(f, restrict_rep(g, sub)).size());

        const auto rf = ran(f, sub);
        CHECK(!validate_rep(rf.rep));
        CHECK(hom_space(g, rf.rep).size() == hom_space(restrict_rep(g, sub), f).size());
    }
}

TEST_CASE("adjunct bijections invert through unit and counit") {
    const FieldSpec q = FieldSpec::rationals();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed * 127 + 1);
        const auto cat = random_category<Rational>(rng, q);
        const auto sub = random_sub(rng, cat);
        const auto x = random_rep<Rational>(rng, q, cat);
        const auto f = random_rep<Rational>(rng, q, sub.cat);

        {
            const auto lf = lan(f, sub);
            const auto s = sample_nat(rng, q, f, restrict_rep(x, sub));
            const auto t = lan_transpose(lf, x, s);
            CHECK(!validate_nat(t));
            // restrict(t) after mu recovers s
            CHECK(nat_equals(compose_nat(unit_mu(lf), restrict_nat(t, sub)), s));
        }
        {
            const auto rf = ran(f, sub);
            const auto s = sample_nat(rng, q, restrict_rep(x, sub), f);
            const auto t = ran_transpose(rf, x, s);
            CHECK(!validate_nat(t));
            // nu after restrict(t) recovers s
            CHECK(nat_equals(compose_nat(restrict_nat(t, sub), counit_nu(rf)), s));
        }
    }
}

TEST_CASE("kan extensions are functorial") {
    const FieldSpec q = FieldSpec::rationals();
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Rng rng(seed * 401 + 9);
        const auto cat = random_category<Rational>(rng, q);
        const auto sub = random_sub(rng, cat);
        const auto f = random_rep<Rational>(rng, q, sub.cat);
        const auto g = random_rep<Rational>(rng, q, sub.cat);
        const auto t = sample_nat(rng, q, f, g);

        const auto lf = lan(f, sub), lg = lan(g, sub);
        const auto lt = lan_nat(t, lf, lg);
        CHECK(!validate_nat(lt));
        CHECK(nat_equals(lan_nat(identity_nat(f), lf, lf), identity_nat(lf.rep)));

        const auto rf = ran(f, sub), rg = ran(g, sub);
        const auto rt = ran_nat(t, rf, rg);
        CHECK(!validate_nat(rt));
        CHECK(nat_equals(ran_nat(identity_nat(f), rf, rf), identity_nat(rf.rep)));

        // composition is preserved
        const auto s = sample_nat(rng, q, g, f);
        const auto ts = compose_nat(t, s);
        CHECK(nat_equals(lan_nat(ts, lf, lf),
                         compose_nat(lt, lan_nat(s, lg, lf))));
        CHECK(nat_equals(ran_nat(ts, rf, rf),
                         compose_nat(rt, ran_nat(s, rg, rf))));
    }
}

TEST_CASE("kan over a prime field") {
    const FieldSpec f5 = FieldSpec::prime(5);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Rng rng(seed * 229);
        const auto cat = random_category<Fp>(rng, f5);
        std::vector<std::size_t> objs;
        for (std::size_t i = 0; i < cat->num_objects(); ++i)
            if (rng.chance(1, 2)) objs.push_back(i);
        if (objs.empty()) objs.push_back(0);
        const auto sub = full_subcategory<Fp>(cat, objs);
        const auto f = random_rep<Fp>(rng, f5, sub.cat);
        const auto lr = lan(f, sub);
        const auto rr = ran(f, sub);
        CHECK(!validate_rep(lr.rep));
        CHECK(!validate_rep(rr.rep));
        CHECK(nat_is_iso(unit_mu(lr)));
        CHECK(nat_is_iso(counit_nu(rr)));
    }
}
