#include "CLI11.hpp"
#include "corpus.hpp"
#include "gen.hpp"
#include "props.hpp"
#include "test_util.hpp"

#include "lk/instantiate.hpp"
#include "lk/oracle/translate.hpp"
#include "lk/printer.hpp"
#include "lk/stack.hpp"
#include "lk/type_checker.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace lk;
using namespace lk::test;
using namespace lk::oracle;

namespace {

std::string const corpus_dir = LK_CORPUS_DIR;

struct outcome {
    bool        m_pass = false;
    std::string m_detail;
};

class stopwatch {
    std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - m_start).count(); }
};

std::string fmt_seconds(double s) {
    std::ostringstream ss;
    ss.precision(3);
    ss << std::fixed << s << " s";
    return ss.str();
}

environment env_of(std::string const & src, environment const & base = environment()) { return mk_env(src, base); }

outcome corpus_criterion() {
    stopwatch w;
    std::vector<corpus::corpus_case> cases = corpus::load_manifest(corpus_dir);
    unsigned pos = 0, neg = 0, matched = 0;
    std::string misses;
    for (corpus::corpus_case const & c : cases) {
        (c.m_expect.m_kind == corpus::expectation::kind::ok ? pos : neg)++;
        corpus::case_result r = corpus::run_case(corpus_dir, c);
        if (r.m_match)
            matched++;
        else
            misses += " " + c.m_path + " (" + r.m_actual + ")";
    }
    double t = w.seconds();
    std::ostringstream ss;
    ss << cases.size() << " files, " << pos << " positive, " << neg << " negative, " << matched << " matched, "
       << fmt_seconds(t) << " (limit 10 s)" << misses;
    return {cases.size() >= 60 && pos >= 40 && neg >= 20 && matched == cases.size() && t < 10.0, ss.str()};
}

/** \brief Binder annotations agree along two structurally equal terms. */
bool same_binder_infos(expr const & a, expr const & b) {
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case expr_kind::Pi:
    case expr_kind::Lambda:
        return a.binding_info() == b.binding_info() && same_binder_infos(a.binding_domain(), b.binding_domain()) &&
               same_binder_infos(a.binding_body(), b.binding_body());
    case expr_kind::App:
        return same_binder_infos(a.app_fn(), b.app_fn()) && same_binder_infos(a.app_arg(), b.app_arg());
    default:
        return true;
    }
}

/** \brief The type of constant \c c equals \c expected up to binder names and a renaming of its universe parameters. */
bool matches_expected_type(environment const & env, char const * c, names const & expected_lparams, std::string const & expected,
                     std::string & detail) {
    constant_info const & ci = env.get(c);
    if (ci.get_lparams().size() != expected_lparams.size()) {
        detail += std::string(" ") + c + ": wrong number of universe parameters;";
        return false;
    }
    levels renamed;
    for (name const & n : expected_lparams)
        renamed.push_back(mk_param(n));
    expr actual = instantiate_lparams(ci.get_type(), ci.get_lparams(), renamed);
    expr want = E(expected);
    if (actual != want || !same_binder_infos(actual, want)) {
        detail += std::string(" ") + c + " : " + to_string(actual) + " differs from the expected type;";
        return false;
    }
    return true;
}

bool reduces_to(type_checker & tc, std::string const & lhs, std::string const & rhs, std::string & detail) {
    expr r = tc.whnf(E(lhs));
    if (r == E(rhs))
        return true;
    detail += " whnf(" + lhs + ") = " + to_string(r) + ";";
    return false;
}

outcome recursor_criterion() {
    std::string detail;
    bool ok = true;
    std::string const motives = "{motive_1 : (a : Nat) → Even a → Sort u} → {motive_2 : (a : Nat) → Odd a → Sort u} → "
                                "motive_1 0 Even.zero → "
                                "({n : Nat} → (a : Odd n) → motive_2 n a → motive_1 (Nat.add n 1) (Even.succ n a)) → "
                                "({n : Nat} → (a : Even n) → motive_1 n a → motive_2 (Nat.add n 1) (Odd.succ' n a)) → ";
    environment even_odd = env_of(R"(
import prelude
mutual
inductive Even : Nat → Type where
  | zero : Even 0
  | succ : {n : Nat} → Odd n → Even (Nat.add n 1)
inductive Odd : Nat → Type where
  | succ' : {n : Nat} → Even n → Odd (Nat.add n 1)
end
axiom m1 : (a : Nat) → Even a → Type
axiom m2 : (a : Nat) → Odd a → Type
axiom Fz : m1 0 Even.zero
axiom Fs : {n : Nat} → (a : Odd n) → m2 n a → m1 (Nat.add n 1) (Even.succ n a)
axiom Fs' : {n : Nat} → (a : Even n) → m1 n a → m2 (Nat.add n 1) (Odd.succ' n a)
axiom k : Nat
axiom o : Odd k
axiom e : Even k
)");
    ok &= matches_expected_type(even_odd, "Even.rec", names{"u"}, motives + "{a : Nat} → (t : Even a) → motive_1 a t", detail);
    ok &= matches_expected_type(even_odd, "Odd.rec", names{"u"}, motives + "{a : Nat} → (t : Odd a) → motive_2 a t", detail);
    type_checker tc(even_odd);
    std::string const rec_args = ".{1} m1 m2 Fz Fs Fs' ";
    ok &= reduces_to(tc, "Even.rec" + rec_args + "0 Even.zero", "Fz", detail);
    ok &= reduces_to(tc, "Even.rec" + rec_args + "(Nat.add k 1) (Even.succ k o)",
                     "Fs k o (Odd.rec" + rec_args + "k o)", detail);
    ok &= reduces_to(tc, "Odd.rec" + rec_args + "(Nat.add k 1) (Odd.succ' k e)",
                     "Fs' k e (Even.rec" + rec_args + "k e)", detail);

    // the propositional block eliminates only into Prop, so its motives are the ones above with Sort u read as Prop
    environment even_odd_prop = env_of(R"(
import prelude
mutual
inductive Even : Nat → Prop where
  | zero : Even 0
  | succ : {n : Nat} → Odd n → Even (Nat.add n 1)
inductive Odd : Nat → Prop where
  | succ' : {n : Nat} → Even n → Odd (Nat.add n 1)
end
)");
    std::string prop_motives = motives;
    for (std::size_t p; (p = prop_motives.find("Sort u")) != std::string::npos;)
        prop_motives.replace(p, 6, "Prop");
    ok &= matches_expected_type(even_odd_prop, "Even.rec", names{}, prop_motives + "{a : Nat} → (t : Even a) → motive_1 a t",
                          detail);

    environment nested = env_of(R"(
import strings
inductive T : Type where
  | mk : List.{0} T → T
axiom m1 : T → Type
axiom m2 : List.{0} T → Type
axiom Fmk : (a : List.{0} T) → m2 a → m1 (T.mk a)
axiom Fnil : m2 (List.nil.{0} T)
axiom Fcons : (head : T) → (tail : List.{0} T) → m1 head → m2 tail → m2 (List.cons.{0} T head tail)
axiom l : List.{0} T
)");
    ok &= matches_expected_type(nested, "T.rec", names{"u"},
                          "{m1 : T → Sort u} → {m2 : List.{0} T → Sort u} → "
                          "((a : List.{0} T) → m2 a → m1 (T.mk a)) → m2 (List.nil.{0} T) → "
                          "((head : T) → (tail : List.{0} T) → m1 head → m2 tail → m2 (List.cons.{0} T head tail)) → "
                          "(t : T) → m1 t",
                          detail);
    type_checker tc2(nested);
    ok &= reduces_to(tc2, "T.rec.{1} m1 m2 Fmk Fnil Fcons (T.mk l)", "Fmk l (T.rec_1.{1} m1 m2 Fmk Fnil Fcons l)", detail);
    ok &= reduces_to(tc2, "T.rec_1.{1} m1 m2 Fmk Fnil Fcons (List.nil.{0} T)", "Fnil", detail);
    return {ok, ok ? "Even.rec, Odd.rec, T.rec have the expected types; Prop block eliminates into Prop; 5 iota rules by whnf"
                   : detail};
}

outcome nontermination_criterion() {
    stopwatch w;
    std::string src = read_file(corpus_dir + "/cases/bad_abel_nontermination.lk");
    std::size_t ex = src.rfind("\nexample");
    environment env = env_of(src.substr(0, ex));
    check_options opts;
    std::string detail = "fuel " + std::to_string(opts.fuel) + ";";
    auto deep = [&](char const * what, std::function<void(type_checker &)> const & f) {
        type_checker tc(env, opts);
        try {
            f(tc);
        } catch (kernel_exception const & e) {
            detail += std::string(" ") + what + ": " + to_string(e.kind()) + ";";
            return e.kind() == error_kind::deep_recursion;
        }
        detail += std::string(" ") + what + ": terminated;";
        return false;
    };
    bool ok = deep("whnf Om", [](type_checker & tc) { tc.whnf(E("Om")); });
    ok &= deep("isDefEq foo.recOn", [](type_checker & tc) {
        tc.is_def_eq(E("Foo.rec.{1} (fun (_ : Foo) => Nat) (fun (_ : True') => 1) foo"), E("1"));
    });
    double t = w.seconds();
    return {ok && t < 5.0, detail + " " + fmt_seconds(t) + " (limit 5 s)"};
}

/** \brief Count the Nat.succ layers of a unary numeral by repeated head normalization in the oracle. */
std::optional<std::uint64_t> oracle_numeral(venv const & env, vexpr e) {
    std::uint64_t n = 0;
    while (true) {
        auto h = vwhnf(env, {}, e, oracle_options{100000});
        if (!h)
            return std::nullopt;
        vexprs args;
        vexpr f = get_vapp_args(*h, args);
        if (f.kind() != vexpr_kind::Const)
            return std::nullopt;
        if (f.const_name() == name("Nat.zero") && args.empty())
            return n;
        if (f.const_name() != name("Nat.succ") || args.size() != 1)
            return std::nullopt;
        n++;
        e = args[0];
    }
}

outcome nat_criterion() {
    stopwatch w;
    environment env = prelude_env();
    venv venv = tr_env(env);
    auto unary = [](unsigned k) {
        expr r = mk_const("Nat.zero");
        for (unsigned i = 0; i < k; i++)
            r = mk_app(mk_const("Nat.succ"), r);
        return r;
    };
    unsigned cases = 0, disagreements = 0;
    std::string first;
    type_checker tc(env);
    for (char const * op : {"Nat.add", "Nat.mul", "Nat.sub", "Nat.pow"})
        for (unsigned a = 0; a <= 12; a++)
            for (unsigned b = 0; b <= (std::string(op) == "Nat.pow" ? 3u : 12u); b++) {
                cases++;
                expr lit = tc.whnf(mk_app(mk_const(op), mk_nat_lit(nat(a)), mk_nat_lit(nat(b))));
                auto vt = tr_expr({}, {}, mk_app(mk_const(op), unary(a), unary(b)), translate_options{0});
                std::optional<std::uint64_t> expected = vt ? oracle_numeral(venv, *vt) : std::nullopt;
                if (!expected || lit != mk_nat_lit(nat(*expected))) {
                    if (disagreements++ == 0)
                        first = std::string(" first: ") + op + " " + std::to_string(a) + " " + std::to_string(b) +
                                " gives " + to_string(lit);
                }
            }
    double t = w.seconds();
    std::ostringstream ss;
    ss << cases << " cases, " << disagreements << " disagreements, " << fmt_seconds(t) << " (limit 30 s)" << first;
    return {disagreements == 0 && t < 30.0, ss.str()};
}

environment const & micro_env() {
    static environment const env = env_of("import micro");
    return env;
}

outcome differential_criterion() {
    venv venv = tr_env(micro_env());
    props::differential_result r = props::run_differential(micro_env(), venv, 1000, 20240611, 5);
    std::ostringstream ss;
    ss << r.generated << " terms at depth 5, " << r.kernel_accepted << " accepted by the kernel, " << r.disagreements
       << " disagreements";
    for (std::string const & e : r.examples)
        ss << "; " << e;
    return {r.generated >= 1000 && r.disagreements == 0, ss.str()};
}

/** \brief Levels that are equivalent to \c l by construction, built with valid laws of max and imax. */
vlevel rewrite_equivalent(std::mt19937_64 & rng, vlevel const & l) {
    switch (rng() % 6) {
    case 0: return vlevel::max(l, l);
    case 1: return vlevel::max(l, vlevel::zero());
    case 2: return vlevel::imax(vlevel::zero(), l);
    default: break;
    }
    switch (l.kind()) {
    case vlevel_kind::Max:
        return vlevel::max(rewrite_equivalent(rng, l.rhs()), rewrite_equivalent(rng, l.lhs()));
    case vlevel_kind::IMax:
        if (l.rhs().kind() == vlevel_kind::Succ)
            return vlevel::max(rewrite_equivalent(rng, l.lhs()), rewrite_equivalent(rng, l.rhs()));
        return vlevel::imax(rewrite_equivalent(rng, l.lhs()), rewrite_equivalent(rng, l.rhs()));
    case vlevel_kind::Succ:
        if (l.arg().kind() == vlevel_kind::Max)
            return vlevel::max(vlevel::succ(l.arg().lhs()), vlevel::succ(rewrite_equivalent(rng, l.arg().rhs())));
        return vlevel::succ(rewrite_equivalent(rng, l.arg()));
    default:
        return l;
    }
}

bool brute_equal(vlevel const & a, vlevel const & b, std::uint64_t bound) {
    for (std::uint64_t x = 0; x <= bound; x++)
        for (std::uint64_t y = 0; y <= bound; y++)
            for (std::uint64_t z = 0; z <= bound; z++)
                if (eval(a, {x, y, z}) != eval(b, {x, y, z}))
                    return false;
    return true;
}

outcome level_criterion() {
    stopwatch w;
    names const ps{"u", "v", "w"};
    std::mt19937_64 rng(7);
    unsigned const pairs = 10000;
    unsigned equivalent = 0, disagree3 = 0, disagree7 = 0;
    std::string first;
    for (unsigned i = 0; i < pairs; i++) {
        vlevel a = gen::random_vlevel(rng, 3, 5);
        vlevel b = i % 2 ? rewrite_equivalent(rng, a) : gen::random_vlevel(rng, 3, 5);
        bool kernel = is_equivalent(to_level(a, ps), to_level(b, ps));
        equivalent += kernel;
        if (kernel != brute_equal(a, b, 3)) {
            if (disagree3++ == 0) {
                std::ostringstream ss;
                ss << " first over {0..3}: " << a << " vs " << b << " kernel " << (kernel ? "equal" : "different");
                first = ss.str();
            }
        }
        if (kernel != brute_equal(a, b, 7))
            disagree7++;
    }
    double t = w.seconds();
    std::ostringstream ss;
    ss << pairs << " pairs (" << equivalent << " equivalent), disagreements over {0..3}^3: " << disagree3
       << ", over {0..7}^3: " << disagree7 << ", " << fmt_seconds(t) << " (limit 10 s)" << first;
    return {disagree3 == 0 && t < 10.0, ss.str()};
}

outcome closure_criterion() {
    venv venv = tr_env(micro_env());
    props::closure_result r = props::run_closure(venv, 500, 31);
    std::ostringstream ss;
    ss << r.judgments << " judgments; weakening " << r.weakening << ", substitution " << r.substitution
       << ", universe substitution " << r.universe << ", strengthening " << r.strengthening << ", unique typing "
       << r.unique_typing << "; " << r.violations() << " violations";
    for (std::string const & e : r.examples)
        ss << "; " << e;
    return {r.judgments >= 500 && r.violations() == 0, ss.str()};
}

std::string report_without_timing(std::string const & path, unsigned jobs) {
    std::ostringstream out;
    try {
        std::ifstream in(path);
        frontend::check_all_options opts;
        opts.m_jobs = jobs;
        frontend::print_report(out, frontend::check_all(frontend::parse_export(in), opts), {false, true});
    } catch (std::exception const & e) {
        out << "error: " << e.what() << '\n';
    }
    std::istringstream lines(out.str());
    std::string line, kept;
    while (std::getline(lines, line))
        if (line.rfind("time", 0) != 0)
            kept += line + '\n';
    return kept;
}

outcome determinism_criterion() {
    unsigned files = 0, differing = 0;
    std::string first;
    for (corpus::corpus_case const & c : corpus::load_manifest(corpus_dir)) {
        files++;
        std::string path = corpus_dir + "/" + c.m_path;
        std::string a = report_without_timing(path, 1);
        bool same = a == report_without_timing(path, 1) && a == report_without_timing(path, 4);
        if (!same && differing++ == 0)
            first = " first: " + c.m_path;
    }
    std::ostringstream ss;
    ss << files << " files checked twice sequentially and once with 4 jobs, " << differing << " differing reports"
       << first;
    return {differing == 0, ss.str()};
}

}

int main(int argc, char ** argv) {
    CLI::App app{"Acceptance criteria"};
    std::string only;
    app.add_option("--only", only, "Run a single criterion, e.g. A3");
    CLI11_PARSE(app, argc, argv);

    struct criterion {
        char const * id;
        char const * title;
        outcome (*run)();
    };
    criterion const criteria[] = {
        {"A1", "corpus", corpus_criterion},
        {"A2", "recursor shape", recursor_criterion},
        {"A3", "nontermination guard", nontermination_criterion},
        {"A4", "Nat acceleration", nat_criterion},
        {"A5", "differential oracle", differential_criterion},
        {"A6", "level decision procedure", level_criterion},
        {"A7", "metatheory closure", closure_criterion},
        {"A8", "determinism", determinism_criterion},
    };
    unsigned failed = 0;
    run_on_stack(default_checker_stack, [&] {
        for (criterion const & c : criteria) {
            if (!only.empty() && only != c.id)
                continue;
            outcome o;
            try {
                o = c.run();
            } catch (std::exception const & e) {
                o = {false, std::string("exception: ") + e.what()};
            }
            failed += !o.m_pass;
            std::cout << (o.m_pass ? "PASS " : "FAIL ") << c.id << " " << c.title << ": " << o.m_detail << std::endl;
        }
    });
    return failed == 0 ? 0 : 1;
}
