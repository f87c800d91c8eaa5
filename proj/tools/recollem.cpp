// Command line front end: loads categories, representations, algebras, and
// complexes from JSON, runs the verification entry points, and emits
// deterministic reports.
//
// Exit codes: 0 when every check passes, 2 when a check fails, 1 on input or
// usage errors.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recollem/idempotent.hpp"
#include "recollem/json_io.hpp"
#include "recollem/report_render.hpp"
#include "recollem/voevodsky.hpp"

using namespace recollem;

namespace {

struct Invocation {
    std::string name;
    std::string which;  // kan: lan or ran
    std::string file;   // primary input
    std::string x, y;   // hom arguments
    std::string rep;    // kan argument
    std::string suite;  // --suite / --tests / --complexes
    std::vector<std::string> sub_ids, s_ids, q_ids;
    std::size_t max_steps = 0;  // 0 picks the per-command default
};

std::string basename_of(const std::string& path) {
    return std::filesystem::path(path).filename().string();
}

// "file.json#name" picks a named entry out of a suite file.
std::pair<std::string, std::string> split_selector(const std::string& arg) {
    const std::size_t hash = arg.rfind('#');
    if (hash == std::string::npos) return {arg, ""};
    return {arg.substr(0, hash), arg.substr(hash + 1)};
}

std::string join_strings(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

template <ExactField K>
struct LoadedCat {
    LinCatPtr<K> cat;
    std::string name;
};

template <ExactField K>
LoadedCat<K> load_cat(const std::string& path, const FieldSpec& spec) {
    const json j = load_json_file(path);
    auto c = std::make_shared<const LinCat<K>>(lincat_from_json<K>(j, spec));
    return {std::move(c), json_name(j, "category")};
}

template <ExactField K>
std::vector<std::size_t> resolve_objects(const LinCat<K>& c,
                                         const std::vector<std::string>& ids) {
    std::vector<std::size_t> out;
    for (const auto& id : ids) {
        bool found = false;
        for (std::size_t i = 0; i < c.num_objects(); ++i)
            if (c.object_id(i) == id) {
                out.push_back(i);
                found = true;
                break;
            }
        if (!found) throw LookupError("no object \"" + id + "\" in the category");
    }
    return out;
}

json pick_rep_json(const std::string& path, const std::string& selector) {
    const json j = load_json_file(path);
    if (!j.contains("reps")) {
        if (!selector.empty())
            throw LookupError(basename_of(path) + " is not a suite file; drop the #" +
                              selector + " selector");
        return j;
    }
    const json& reps = j.at("reps");
    if (!reps.is_array()) throw SchemaError(basename_of(path) + ".reps: expected an array");
    if (selector.empty()) {
        if (reps.size() == 1) return reps[0];
        throw LookupError(basename_of(path) + " holds " + std::to_string(reps.size()) +
                          " reps; pick one with #name");
    }
    for (const auto& r : reps)
        if (json_name(r, "rep") == selector) return r;
    throw LookupError("no rep named \"" + selector + "\" in " + basename_of(path));
}

template <ExactField K>
Rep<K> load_rep_arg(const std::string& arg, const LoadedCat<K>& lc, const FieldSpec& spec) {
    const auto [path, selector] = split_selector(arg);
    return rep_from_json<K>(pick_rep_json(path, selector), lc.cat, spec, lc.name);
}

template <ExactField K>
std::vector<Rep<K>> load_rep_suite(const std::string& path, const LoadedCat<K>& lc,
                                   const FieldSpec& spec,
                                   std::vector<std::string>* names = nullptr) {
    const json j = load_json_file(path);
    std::vector<Rep<K>> out;
    const auto push = [&](const json& rj, std::size_t idx) {
        out.push_back(rep_from_json<K>(rj, lc.cat, spec, lc.name));
        if (names) {
            std::string nm = json_name(rj, "rep");
            names->push_back(nm.empty() ? "#" + std::to_string(idx) : nm);
        }
    };
    if (j.contains("reps")) {
        std::size_t idx = 0;
        for (const auto& rj : j.at("reps")) push(rj, idx++);
    } else {
        push(j, 0);
    }
    if (out.empty()) throw SchemaError(basename_of(path) + ": empty representation suite");
    return out;
}

template <ExactField K>
std::vector<Complex<K>> load_complex_suite(const std::string& path, LinCatPtr<K> cat,
                                           const FieldSpec& spec) {
    const json j = load_json_file(path);
    std::vector<Complex<K>> out;
    if (j.contains("complexes")) {
        for (const auto& cj : j.at("complexes"))
            out.push_back(complex_from_json<K>(cj, cat, spec));
    } else {
        out.push_back(complex_from_json<K>(j, cat, spec));
    }
    if (out.empty()) throw SchemaError(basename_of(path) + ": empty complex suite");
    return out;
}

// The strongest single probe: the direct sum of all representables.
template <ExactField K>
Rep<K> regular_rep(LinCatPtr<K> cat) {
    std::vector<Rep<K>> parts;
    for (std::size_t a = 0; a < cat->num_objects(); ++a)
        parts.push_back(representable<K>(cat, a));
    if (parts.empty()) return zero_rep<K>(cat);
    return direct_sum_reps(parts).rep;
}

template <ExactField K>
std::string dims_string(const Rep<K>& x) {
    std::string out = "(";
    for (std::size_t c = 0; c < x.dims.size(); ++c) {
        if (c) out += ", ";
        out += std::to_string(x.dims[c]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Subcommands

template <ExactField K>
CheckReport run_validate(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    CheckReport rep;
    const json j = load_json_file(inv.file);
    const std::string where = basename_of(inv.file);

    // Suite files name their category; the category file sits next to them.
    const auto sibling_cat = [&](const json& owner) {
        if (!owner.contains("cat") || !owner.at("cat").is_string())
            throw SchemaError(where + ": missing category name in \"cat\"");
        const std::filesystem::path dir = std::filesystem::path(inv.file).parent_path();
        const std::string cname = owner.at("cat").get<std::string>();
        return load_cat<K>((dir / (cname + ".json")).string(), spec);
    };

    if (j.contains("objects")) {
        const auto c = lincat_from_json<K>(j, spec);
        const auto bad = c.validate();
        rep.add("category satisfies the k-linear axioms", !bad.has_value(),
                bad ? *bad : "");
        rep.add_data("objects", std::to_string(c.num_objects()));
        std::size_t total = 0;
        for (std::size_t a = 0; a < c.num_objects(); ++a)
            for (std::size_t b = 0; b < c.num_objects(); ++b) total += c.hom_dim(a, b);
        rep.add_data("total hom dimension", std::to_string(total));
    } else if (j.contains("reps")) {
        const auto lc = sibling_cat(j);
        std::size_t idx = 0;
        for (const auto& rj : j.at("reps")) {
            const auto x = rep_from_json<K>(rj, lc.cat, spec, lc.name);
            const auto bad = validate_rep(x);
            std::string nm = json_name(rj, "rep");
            if (nm.empty()) nm = "#" + std::to_string(idx);
            rep.add("rep " + nm + " satisfies the functor laws", !bad.has_value(),
                    bad ? *bad : "");
            ++idx;
        }
    } else if (j.contains("complexes")) {
        const auto lc = sibling_cat(j);
        std::size_t idx = 0;
        for (const auto& cj : j.at("complexes")) {
            const auto x = complex_from_json<K>(cj, lc.cat, spec, lc.name);
            const auto bad = validate_complex(x);
            std::string nm = json_name(cj, "complex");
            if (nm.empty()) nm = "#" + std::to_string(idx);
            rep.add("complex " + nm + " squares to zero", !bad.has_value(), bad ? *bad : "");
            ++idx;
        }
    } else if (j.contains("mult")) {
        const auto a = algebra_from_json<K>(j, spec);
        const auto bad = a.validate();
        rep.add("algebra axioms and idempotency hold", !bad.has_value(), bad ? *bad : "");
        rep.add_data("dimension", std::to_string(a.alg.dim));
    } else if (j.contains("terms")) {
        const auto lc = sibling_cat(j);
        const auto x = complex_from_json<K>(j, lc.cat, spec, lc.name);
        const auto bad = validate_complex(x);
        rep.add("complex squares to zero", !bad.has_value(), bad ? *bad : "");
    } else {
        throw SchemaError(where + ": unrecognized file shape");
    }
    meta.input = where;
    return rep;
}

template <ExactField K>
CheckReport run_hom(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    CheckReport rep;
    const auto lc = load_cat<K>(inv.file, spec);
    const auto x = load_rep_arg<K>(inv.x, lc, spec);
    const auto y = load_rep_arg<K>(inv.y, lc, spec);
    rep.add_data("dim hom", std::to_string(hom_space(x, y).size()));
    rep.add_data("source dims", dims_string(x));
    rep.add_data("target dims", dims_string(y));
    meta.input = basename_of(inv.file);
    return rep;
}

template <ExactField K>
CheckReport run_kan(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    CheckReport rep;
    const auto lc = load_cat<K>(inv.file, spec);
    const auto sub = full_subcategory(lc.cat, resolve_objects(*lc.cat, inv.sub_ids));

    // The input may live over the subcategory or over the ambient category;
    // the dim keys decide.
    const auto [path, selector] = split_selector(inv.rep);
    const json rj = pick_rep_json(path, selector);
    bool over_sub = true;
    if (rj.contains("dim") && rj.at("dim").is_object()) {
        for (const auto& item : rj.at("dim").items()) {
            bool in_sub = false;
            for (std::size_t p = 0; p < sub.size(); ++p)
                if (sub.cat->object_id(p) == item.key()) in_sub = true;
            if (!in_sub) over_sub = false;
        }
    }
    Rep<K> h;
    if (over_sub) {
        h = rep_from_json<K>(rj, sub.cat, spec);
    } else {
        h = restrict_rep(rep_from_json<K>(rj, lc.cat, spec, lc.name), sub);
        rep.add_data("note", "input restricted from the ambient category");
    }

    Rep<K> out;
    if (inv.which == "lan") {
        const auto lr = lan(h, sub);
        out = lr.rep;
        rep.add("the extension restricts back to the input", nat_is_iso(unit_mu(lr)),
                "unit of the adjunction is not invertible");
    } else {
        const auto rr = ran(h, sub);
        out = rr.rep;
        rep.add("the extension restricts back to the input", nat_is_iso(counit_nu(rr)),
                "counit of the adjunction is not invertible");
    }
    for (std::size_t c = 0; c < lc.cat->num_objects(); ++c)
        rep.add_data("dim at " + lc.cat->object_id(c), std::to_string(out.dims[c]));
    meta.input = basename_of(inv.file);
    return rep;
}

template <ExactField K>
CheckReport run_abrec(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    const auto lc = load_cat<K>(inv.file, spec);
    const auto rec = make_ab_recollement(lc.cat, resolve_objects(*lc.cat, inv.sub_ids));
    std::vector<Rep<K>> tests;
    if (inv.suite.empty())
        tests.push_back(regular_rep<K>(lc.cat));
    else
        tests = load_rep_suite<K>(inv.suite, lc, spec);
    CheckReport rep = verify_ab_recollement(rec, tests);
    rep.add_data("test objects", inv.suite.empty() ? "regular representation"
                                                   : std::to_string(tests.size()));
    meta.input = basename_of(inv.file);
    return rep;
}

template <ExactField K>
CheckReport run_peirce(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    const auto a = algebra_from_json<K>(load_json_file(inv.file), spec);
    const Algebra<K>& R = a.alg;
    std::vector<K> complement(R.dim);
    for (std::size_t i = 0; i < R.dim; ++i) complement[i] = R.unit[i] - a.idem[i];

    std::vector<Module<K>> mods;
    mods.push_back(regular_module(R));
    mods.push_back(left_ideal_module(R, a.idem).mod);
    mods.push_back(left_ideal_module(R, complement).mod);
    CheckReport rep = compare_with_recollement(a, mods);
    rep.add_data("test modules", "R, Re, R(1-e)");
    meta.input = basename_of(inv.file);
    return rep;
}

template <ExactField K>
CheckReport run_derrec(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    const auto lc = load_cat<K>(inv.file, spec);
    const std::size_t cap = inv.max_steps ? inv.max_steps : 16;
    const auto rec =
        make_der_recollement(lc.cat, resolve_objects(*lc.cat, inv.sub_ids), cap);
    std::vector<Complex<K>> tests;
    if (inv.suite.empty()) {
        for (std::size_t a = 0; a < lc.cat->num_objects(); ++a)
            tests.push_back(complex_of(representable<K>(lc.cat, a)));
    } else {
        tests = load_complex_suite<K>(inv.suite, lc.cat, spec);
    }
    CheckReport rep = verify_der_recollement(rec, tests);
    meta.input = basename_of(inv.file);
    return rep;
}

template <ExactField K>
CheckReport run_vcheck(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    CheckReport rep;
    const auto lc = load_cat<K>(inv.file, spec);
    auto v = make_v_setup(lc.cat, resolve_objects(*lc.cat, inv.s_ids),
                          resolve_objects(*lc.cat, inv.q_ids),
                          inv.max_steps ? inv.max_steps : 32);

    std::vector<Rep<K>> suite;
    if (inv.suite.empty()) {
        // canonical probes: torsion parts of the representables
        for (std::size_t a = 0; a < lc.cat->num_objects(); ++a) {
            const auto r = representable<K>(lc.cat, a);
            suite.push_back(torsion(r, v.s_side).rep);
            suite.push_back(torsion_free(r, v.s_side).rep);
        }
        rep.add_data("suite", "torsion parts of the representables");
    } else {
        std::vector<std::string> names;
        const auto loaded = load_rep_suite<K>(inv.suite, lc, spec, &names);
        for (std::size_t i = 0; i < loaded.size(); ++i) {
            if (in_S_A(loaded[i], v.s_side)) {
                suite.push_back(loaded[i]);
            } else {
                rep.add_data("suite member " + names[i], "skipped: not S-torsion");
            }
        }
    }

    const auto result = v_property_check(v, suite);
    rep.add("the Voevodsky property holds on the suite", result.holds,
            join_strings(result.witnesses, "; "));
    rep.add_data("suite members checked", std::to_string(suite.size()));
    meta.extra["holds"] = result.holds ? "true" : "false";
    meta.input = basename_of(inv.file);
    return rep;
}

template <ExactField K>
CheckReport run_bigthm(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    const auto lc = load_cat<K>(inv.file, spec);
    auto v = make_v_setup(lc.cat, resolve_objects(*lc.cat, inv.s_ids),
                          resolve_objects(*lc.cat, inv.q_ids),
                          inv.max_steps ? inv.max_steps : 32);
    const std::size_t cap = inv.max_steps ? inv.max_steps : 16;

    const auto bcat = v.subB().cat;
    std::vector<Complex<K>> tests;
    if (inv.suite.empty()) {
        for (std::size_t p = 0; p < bcat->num_objects(); ++p)
            tests.push_back(complex_of(representable<K>(bcat, p)));
        if (!tests.empty()) tests.push_back(cone(identity_chain_map(tests[0])));
    } else {
        tests = load_complex_suite<K>(inv.suite, bcat, spec);
    }

    const auto bt = bigthm_build_and_verify(v, tests, cap);
    meta.extra["status"] = bt.status;
    meta.input = basename_of(inv.file);
    return bt.report;
}

template <ExactField K>
CheckReport dispatch(const Invocation& inv, const FieldSpec& spec, ReportMeta& meta) {
    if (inv.name == "validate") return run_validate<K>(inv, spec, meta);
    if (inv.name == "hom") return run_hom<K>(inv, spec, meta);
    if (inv.name == "kan") return run_kan<K>(inv, spec, meta);
    if (inv.name == "abrec") return run_abrec<K>(inv, spec, meta);
    if (inv.name == "peirce") return run_peirce<K>(inv, spec, meta);
    if (inv.name == "derrec") return run_derrec<K>(inv, spec, meta);
    if (inv.name == "vcheck") return run_vcheck<K>(inv, spec, meta);
    if (inv.name == "bigthm") return run_bigthm<K>(inv, spec, meta);
    throw LookupError("unknown subcommand " + inv.name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact recollements of functor categories"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string field = "q";
    long long seed_val = 0;
    std::string report_path;
    std::string format = "json";
    Invocation inv;

    app.add_option("--field", field, "coefficient field: q or fp:<p>")
        ->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed_val, "seed recorded in the report");
    app.add_option("--max-steps", inv.max_steps,
                   "bound for fixpoint iteration and resolution length");
    app.add_option("--report", report_path, "write the report to this path");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "md"}))
        ->capture_default_str();

    auto* validate_cmd =
        app.add_subcommand("validate", "check a JSON file against schema and axioms");
    validate_cmd->add_option("file", inv.file, "category, rep, algebra, or complex file")
        ->required();

    auto* hom_cmd = app.add_subcommand("hom", "dimension of a natural transformation space");
    hom_cmd->add_option("cat", inv.file, "category file")->required();
    hom_cmd->add_option("x", inv.x, "source rep (file or file#name)")->required();
    hom_cmd->add_option("y", inv.y, "target rep (file or file#name)")->required();

    auto* kan_cmd =
        app.add_subcommand("kan", "Kan extension along a full subcategory inclusion");
    kan_cmd->add_option("which", inv.which, "lan or ran")
        ->check(CLI::IsMember({"lan", "ran"}))
        ->required();
    kan_cmd->add_option("cat", inv.file, "category file")->required();
    kan_cmd->add_option("rep", inv.rep, "rep file (over the subcategory or ambient)")
        ->required();
    kan_cmd->add_option("--sub", inv.sub_ids, "subcategory object ids")
        ->delimiter(',')
        ->required();

    auto* abrec_cmd =
        app.add_subcommand("abrec", "verify the Abelian recollement along a subcategory");
    abrec_cmd->add_option("cat", inv.file, "category file")->required();
    abrec_cmd->add_option("--sub", inv.sub_ids, "subcategory object ids")
        ->delimiter(',')
        ->required();
    abrec_cmd->add_option("--tests", inv.suite,
                          "rep suite file (default: the regular representation)");

    auto* peirce_cmd = app.add_subcommand(
        "peirce", "compare module-theoretic functors with the recollement");
    peirce_cmd->add_option("algebra", inv.file, "algebra-with-idempotent file")->required();

    auto* derrec_cmd =
        app.add_subcommand("derrec", "verify the derived recollement along a subcategory");
    derrec_cmd->add_option("cat", inv.file, "category file")->required();
    derrec_cmd->add_option("--sub", inv.sub_ids, "subcategory object ids")
        ->delimiter(',')
        ->required();
    derrec_cmd->add_option("--complexes", inv.suite,
                           "complex suite file (default: representable complexes)");

    auto* vcheck_cmd =
        app.add_subcommand("vcheck", "check the Voevodsky property for a pair of classes");
    vcheck_cmd->add_option("cat", inv.file, "category file")->required();
    vcheck_cmd->add_option("--s-objects", inv.s_ids, "objects the S class kills")
        ->delimiter(',');
    vcheck_cmd->add_option("--q-objects", inv.q_ids, "objects the Q class kills")
        ->delimiter(',');
    vcheck_cmd->add_option("--suite", inv.suite,
                           "rep suite file; non-torsion members are skipped");

    auto* bigthm_cmd = app.add_subcommand(
        "bigthm", "build and verify the localized recollement end to end");
    bigthm_cmd->add_option("cat", inv.file, "category file")->required();
    bigthm_cmd->add_option("--s-objects", inv.s_ids, "objects the S class kills")
        ->delimiter(',');
    bigthm_cmd->add_option("--q-objects", inv.q_ids, "objects the Q class kills")
        ->delimiter(',');
    bigthm_cmd->add_option("--complexes", inv.suite,
                           "complex suite over the quotient model (default: representables)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    const CLI::App* picked = app.get_subcommands().front();
    inv.name = picked->get_name();

    try {
        const FieldSpec spec = FieldSpec::parse(field);
        ReportMeta meta;
        meta.subcommand = inv.name;
        meta.field = spec.str();
        if (seed_opt->count()) meta.seed = seed_val;

        CheckReport rep;
        if (spec.kind == FieldSpec::Kind::rational)
            rep = dispatch<Rational>(inv, spec, meta);
        else
            rep = dispatch<Fp>(inv, spec, meta);

        const std::string rendered = render_report(rep, meta, format);
        if (!report_path.empty()) {
            std::ofstream out(report_path, std::ios::binary);
            if (!out) throw Error("cannot open report path " + report_path);
            out << rendered;
            if (!out.good()) throw Error("failed writing report to " + report_path);
            std::cout << inv.name << ": " << (rep.ok() ? "pass" : "FAIL") << ", report at "
                      << report_path << "\n";
        } else {
            std::cout << rendered;
        }
        return rep.ok() ? 0 : 2;
    } catch (const ConsistencyError& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
