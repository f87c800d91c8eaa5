// Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
// Exit code is the number of failed criteria.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "recollem/idempotent.hpp"
#include "recollem/json_io.hpp"
#include "recollem/randomgen.hpp"
#include "recollem/report_render.hpp"
#include "recollem/voevodsky.hpp"

using namespace recollem;

namespace {

int failures = 0;

void crit(int n, const std::string& what, const std::function<bool()>& f) {
    bool ok = false;
    std::string note;
    try {
        ok = f();
    } catch (const std::exception& e) {
        note = std::string(" [") + e.what() + "]";
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << what << note
              << std::endl;
    if (!ok) ++failures;
}

Rep<Rational> simple_at(LinCatPtr<Rational> cat, std::size_t v) {
    std::vector<std::size_t> dims(cat->num_objects(), 0);
    dims[v] = 1;
    Rep<Rational> x = make_zero_shaped_rep<Rational>(cat, std::move(dims));
    const auto& idc = cat->identity_coords(v);
    for (std::size_t i = 0; i < idc.size(); ++i) x.act[{v, v}][i](0, 0) = idc[i];
    return x;
}

std::vector<Rep<Rational>> standard_reps(LinCatPtr<Rational> cat, Rng& rng,
                                         std::size_t randoms) {
    const FieldSpec q = FieldSpec::rationals();
    std::vector<Rep<Rational>> out;
    for (std::size_t a = 0; a < cat->num_objects(); ++a) {
        out.push_back(representable<Rational>(cat, a));
        out.push_back(simple_at(cat, a));
    }
    for (std::size_t i = 0; i < randoms; ++i) out.push_back(random_rep<Rational>(rng, q, cat));
    return out;
}

struct NamedCat {
    std::string name;
    LinCatPtr<Rational> cat;
    std::vector<std::size_t> sub;  // canonical test subcategory
};

std::vector<NamedCat> lincat_fixtures() {
    return {{"a2", fixtures::a2<Rational>(), {1}},
            {"a3", fixtures::a3<Rational>(), {0, 2}},
            {"a3rel", fixtures::a3rel<Rational>(), {2}},
            {"dual_numbers", fixtures::dual_numbers<Rational>(), {}}};
}

// All 1-dimensional modules with 0/1 action scalars.  The shipped algebras
// are split basic, so this finds exactly their simples.
std::vector<Module<Rational>> simple_modules(const Algebra<Rational>& R) {
    std::vector<Module<Rational>> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << R.dim); ++mask) {
        Module<Rational> m;
        m.dim = 1;
        m.action.assign(R.dim, Matrix<Rational>(1, 1));
        for (std::size_t i = 0; i < R.dim; ++i)
            m.action[i](0, 0) = (mask >> i) & 1 ? Rational(1) : Rational(0);
        if (!validate_module(R, m)) out.push_back(std::move(m));
    }
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RECOLLEM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return "<unreadable: " + path + ">";
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

int main() {
    const FieldSpec q = FieldSpec::rationals();
    const std::string fixdir = RECOLLEM_FIXTURE_DIR;

    crit(1, "Yoneda law on 100 random instances", [&] {
        Rng rng(20260815);
        for (int i = 0; i < 100; ++i) {
            const auto cat = random_category<Rational>(rng, q);
            const auto x = random_rep<Rational>(rng, q, cat);
            for (std::size_t a = 0; a < cat->num_objects(); ++a)
                if (hom_space(representable<Rational>(cat, a), x).size() != x.dims[a])
                    return false;
        }
        return true;
    });

    crit(2, "Abelian recollement verification on fixed and random setups", [&] {
        Rng rng(802);
        {
            const auto c = fixtures::a2<Rational>();
            if (!verify_ab_recollement(make_ab_recollement(c, {1}), standard_reps(c, rng, 2))
                     .ok())
                return false;
        }
        {
            const auto c = fixtures::a3<Rational>();
            if (!verify_ab_recollement(make_ab_recollement(c, {0, 2}),
                                       standard_reps(c, rng, 2))
                     .ok())
                return false;
        }
        for (int i = 0; i < 20; ++i) {
            const auto cat = random_category<Rational>(rng, q);
            std::vector<std::size_t> objs;
            for (std::size_t a = 0; a < cat->num_objects(); ++a)
                if (rng.chance(1, 2)) objs.push_back(a);
            const auto rec = make_ab_recollement(cat, objs);
            const std::vector<Rep<Rational>> tests = {random_rep<Rational>(rng, q, cat),
                                                      random_rep<Rational>(rng, q, cat)};
            if (!verify_ab_recollement(rec, tests).ok()) return false;
        }
        return true;
    });

    crit(3, "four-term localization sequences exact, torsion parts in S_A", [&] {
        Rng rng(803);
        for (const auto& fx : lincat_fixtures()) {
            const auto rec = make_ab_recollement(fx.cat, fx.sub);
            for (const auto& x : standard_reps(fx.cat, rng, 20)) {
                try {
                    (void)verify_adjseq(x, rec);
                } catch (const Error&) {
                    return false;
                }
                if (!in_S_A(torsion(x, rec).rep, rec)) return false;
                if (!in_S_A(torsion_free(x, rec).rep, rec)) return false;
            }
        }
        return true;
    });

    crit(4, "module-theoretic oracle agrees with the recollement on UT2 and k x k", [&] {
        Rng rng(804);
        for (const auto& a : {fixtures::ut2<Rational>(), fixtures::kxk<Rational>()}) {
            const auto P = peirce_category(a);
            const Algebra<Rational>& R = a.alg;
            std::vector<Rational> complement(R.dim);
            for (std::size_t i = 0; i < R.dim; ++i) complement[i] = R.unit[i] - a.idem[i];

            std::vector<Module<Rational>> mods;
            mods.push_back(regular_module(R));
            mods.push_back(left_ideal_module(R, a.idem).mod);
            mods.push_back(left_ideal_module(R, complement).mod);
            for (auto& s : simple_modules(R)) mods.push_back(std::move(s));
            for (int i = 0; i < 10; ++i)
                mods.push_back(mitchell_module(P, random_rep<Rational>(rng, q, P.cat)));
            if (!compare_with_recollement(a, mods).ok()) return false;
        }
        return true;
    });

    crit(5, "derived hom from representables matches homology dimensions", [&] {
        Rng rng(805);
        for (const auto& fx : lincat_fixtures()) {
            for (int i = 0; i < 50; ++i) {
                const auto y = random_complex<Rational>(rng, q, fx.cat);
                for (std::size_t a = 0; a < fx.cat->num_objects(); ++a)
                    if (!tenshom_check(a, y).ok()) return false;
            }
        }
        return true;
    });

    crit(6, "derived recollement: perpendicularity, triangles, adjunction laws", [&] {
        Rng rng(806);
        for (const auto& fx : lincat_fixtures()) {
            const auto rec = make_der_recollement(fx.cat, fx.sub);
            std::vector<Complex<Rational>> tests;
            for (std::size_t a = 0; a < fx.cat->num_objects(); ++a)
                tests.push_back(complex_of(representable<Rational>(fx.cat, a)));
            tests.push_back(shift(tests[0], 1));
            tests.push_back(cone(identity_chain_map(tests[0])));
            tests.push_back(random_complex<Rational>(rng, q, fx.cat));
            tests.push_back(random_complex<Rational>(rng, q, fx.cat));
            if (!verify_der_recollement(rec, tests).ok()) return false;
        }
        return true;
    });

    crit(7, "Voevodsky property ground truth with localized-class cross-check", [&] {
        const auto c = fixtures::a2<Rational>();

        auto bad = make_v_setup(c, {0}, {1});
        if (v_property_check(bad, {simple_at(c, 1)}).holds) return false;
        if (q_localize(simple_at(c, 1), bad).local.dims !=
            std::vector<std::size_t>{1, 1})
            return false;

        auto good = make_v_setup(c, {1}, {0});
        if (!v_property_check(good, {simple_at(c, 0)}).holds) return false;
        if (q_localize(simple_at(c, 0), good).local.dims !=
            std::vector<std::size_t>{1, 0})
            return false;

        // strict check agrees on the corresponding complex suites
        const auto bc = good.subB().cat;
        if (!strict_v_check(good, {complex_of(representable<Rational>(bc, 0))}).holds)
            return false;
        bad.v_checked = true;
        if (strict_v_check(bad, {complex_of(representable<Rational>(bad.subB().cat, 0))})
                .holds)
            return false;

        // brute force: semisimple subquotients of localization images (the
        // images carry zero arrow action, so these are all the subquotients
        // up to dimension 4) must pass the membership test
        for (std::size_t d = 0; d <= 4; ++d) {
            Rep<Rational> z = make_zero_shaped_rep<Rational>(bc, {d});
            const auto& idc = bc->identity_coords(0);
            for (std::size_t i = 0; i < idc.size(); ++i)
                for (std::size_t k = 0; k < d; ++k) z.act[{0, 0}][i](k, k) = idc[i];
            if (!s_q_membership(z, good)) return false;
        }

        const auto c3 = fixtures::a3<Rational>();
        auto v3 = make_v_setup(c3, {2}, {1, 2});
        const std::vector<Rep<Rational>> suite = {
            torsion_free(representable<Rational>(c3, 1), v3.s_side).rep,
            torsion_free(representable<Rational>(c3, 2), v3.s_side).rep};
        if (!v_property_check(v3, suite).holds) return false;
        const auto bc3 = v3.subB().cat;
        for (std::size_t d = 0; d <= 4; ++d) {
            Rep<Rational> z = make_zero_shaped_rep<Rational>(bc3, {d, 0});
            const auto& idc = bc3->identity_coords(0);
            for (std::size_t i = 0; i < idc.size(); ++i)
                for (std::size_t k = 0; k < d; ++k) z.act[{0, 0}][i](k, k) = idc[i];
            if (!s_q_membership(z, v3)) return false;
        }
        // and a non-member is rejected
        Rep<Rational> bad3 = make_zero_shaped_rep<Rational>(bc3, {0, 1});
        const auto& idc3 = bc3->identity_coords(1);
        for (std::size_t i = 0; i < idc3.size(); ++i) bad3.act[{1, 1}][i](0, 0) = idc3[i];
        return !s_q_membership(bad3, v3);
    });

    crit(8, "joint localization converges and produces two-sided local objects", [&] {
        Rng rng(808);
        struct Pair {
            LinCatPtr<Rational> cat;
            std::vector<std::size_t> s, qv;
        };
        const std::vector<Pair> pairs = {
            {fixtures::a2<Rational>(), {1}, {0}},
            {fixtures::a3<Rational>(), {2}, {1, 2}},
            {fixtures::a3rel<Rational>(), {2}, {0}},
            {fixtures::dual_numbers<Rational>(), {}, {0}},
        };
        for (const auto& p : pairs) {
            const auto v = make_v_setup(p.cat, p.s, p.qv);
            for (const auto& x : standard_reps(p.cat, rng, 20)) {
                const auto jr = join_localize(x, v);  // throws past 32 rounds
                if (!nat_is_iso(localize_S_A(jr.local, v.s_side).map)) return false;
                if (!nat_is_iso(localize_S_A(jr.local, v.q_side).map)) return false;
            }
        }
        // on the degenerate a2 pair everything dies
        const auto c = fixtures::a2<Rational>();
        const auto v = make_v_setup(c, {1}, {0});
        for (const auto& x : standard_reps(c, rng, 20))
            if (join_localize(x, v).local.total_dim() != 0) return false;
        return true;
    });

    crit(9, "localized recollement pipeline verified on both instances", [&] {
        const auto check = [](const BigthmResult& bt) {
            if (bt.status != "verified" || !bt.report.ok()) return false;
            bool t3 = false, t5 = false;
            for (const std::string p : {"h1:", "t1:", "t2:", "t3:", "t4:", "t5:", "t6:"}) {
                bool found = false;
                for (const auto& cl : bt.report.clauses)
                    if (cl.name.rfind(p, 0) == 0) found = true;
                if (!found) return false;
            }
            for (const auto& cl : bt.report.clauses) {
                if (cl.name.rfind("t3:", 0) == 0 &&
                    cl.name.find("quasi-isomorphism") != std::string::npos)
                    t3 = true;
                if (cl.name.rfind("t5:", 0) == 0 &&
                    cl.name.find("agree up to quasi-isomorphism") != std::string::npos)
                    t5 = true;
            }
            return t3 && t5;
        };

        const auto c2 = fixtures::a2<Rational>();
        auto v2 = make_v_setup(c2, {1}, {0});
        std::vector<Complex<Rational>> t2;
        t2.push_back(complex_of(representable<Rational>(v2.subB().cat, 0)));
        t2.push_back(cone(identity_chain_map(t2[0])));
        if (!check(bigthm_build_and_verify(v2, t2))) return false;

        const auto c3 = fixtures::a3<Rational>();
        auto v3 = make_v_setup(c3, {2}, {1, 2});
        std::vector<Complex<Rational>> t3;
        const auto bc3 = v3.subB().cat;
        t3.push_back(complex_of(representable<Rational>(bc3, 0)));
        t3.push_back(complex_of(representable<Rational>(bc3, 1)));
        t3.push_back(cone(identity_chain_map(t3[0])));
        return check(bigthm_build_and_verify(v3, t3));
    });

    crit(10, "reports are deterministic and reproduce the committed goldens", [&] {
        const auto run_once = [] {
            const auto c = fixtures::a3<Rational>();
            auto v = make_v_setup(c, {2}, {1, 2});
            std::vector<Complex<Rational>> tests;
            tests.push_back(complex_of(representable<Rational>(v.subB().cat, 0)));
            const auto bt = bigthm_build_and_verify(v, tests);
            ReportMeta meta;
            meta.subcommand = "bigthm";
            meta.field = "q";
            meta.seed = 7;
            meta.extra["status"] = bt.status;
            return render_report_json(bt.report, meta);
        };
        if (run_once() != run_once()) return false;

        const std::string tmp =
            (std::filesystem::temp_directory_path() / "recollem_acceptance_").string();
        struct Row {
            std::string golden;
            int code;
            std::string args;
        };
        const Row rows[] = {
            {"vcheck-a2-holds.json", 0,
             "vcheck " + fixdir + "/a2.json --s-objects 2 --q-objects 1 --suite " + fixdir +
                 "/simples.json --seed 7"},
            {"bigthm-a3.json", 0, "bigthm " + fixdir + "/a3.json --s-objects 3 --q-objects 2,3"},
        };
        for (const auto& row : rows) {
            const std::string out = tmp + row.golden;
            if (run_cli(row.args + " --report " + out) != row.code) return false;
            if (slurp(out) != slurp(fixdir + "/golden/" + row.golden)) return false;
            std::filesystem::remove(out);
        }
        return true;
    });

    if (failures == 0) std::cout << "acceptance: all criteria passed" << std::endl;
    return failures;
}
