#pragma once
#include "lk/level.hpp"
#include "lk/name.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lk {

using nat = boost::multiprecision::cpp_int;

enum class expr_kind : std::uint8_t { BVar, FVar, MVar, Sort, Const, App, Lambda, Pi, Let, Lit, MData, Proj };

enum class binder_info : std::uint8_t { Default, Implicit, StrictImplicit, InstImplicit };

/** \brief Identifier of a free variable. Allocated from a monotone counter by the type checker. */
struct fvar_id {
    std::uint64_t m_idx = 0;
    friend bool operator==(fvar_id a, fvar_id b) { return a.m_idx == b.m_idx; }
    friend bool operator!=(fvar_id a, fvar_id b) { return a.m_idx != b.m_idx; }
    friend bool operator<(fvar_id a, fvar_id b) { return a.m_idx < b.m_idx; }
};

class literal {
public:
    enum class kind : std::uint8_t { Nat, String };
private:
    kind        m_kind;
    nat         m_nat;
    std::string m_str;
public:
    explicit literal(nat v) : m_kind(kind::Nat), m_nat(std::move(v)) {}
    explicit literal(std::string s) : m_kind(kind::String), m_str(std::move(s)) {}
    kind get_kind() const { return m_kind; }
    bool is_nat() const { return m_kind == kind::Nat; }
    bool is_string() const { return m_kind == kind::String; }
    nat const & get_nat() const { return m_nat; }
    /** \brief UTF-8 encoded payload. */
    std::string const & get_string() const { return m_str; }
    std::size_t hash() const;
    friend bool operator==(literal const & a, literal const & b);
};

/** \brief Kernel expression. Immutable; children are shared. */
class expr {
public:
    struct cell;
private:
    std::shared_ptr<const cell> m_ptr;
    explicit expr(std::shared_ptr<const cell> p) : m_ptr(std::move(p)) {}
    explicit expr(std::nullptr_t) {}
    friend struct expr_builder;
public:
    /** \brief Default expression is <tt>Sort 0</tt>. */
    expr();

    expr_kind kind() const;
    std::size_t hash() const;
    bool has_fvar() const;
    bool has_mvar() const;
    bool has_lparam() const;
    /** \brief One more than the largest loose bound variable index, 0 when closed. */
    std::uint32_t loose_bvar_range() const;
    bool has_loose_bvars() const { return loose_bvar_range() > 0; }

    std::uint64_t bvar_idx() const;
    fvar_id fvar() const;
    name const & mvar_name() const;
    level const & sort_level() const;
    name const & const_name() const;
    levels const & const_levels() const;
    expr const & app_fn() const;
    expr const & app_arg() const;
    name const & binding_name() const;
    expr const & binding_domain() const;
    expr const & binding_body() const;
    binder_info binding_info() const;
    name const & let_name() const;
    expr const & let_type() const;
    expr const & let_value() const;
    expr const & let_body() const;
    bool let_nondep() const;
    literal const & lit() const;
    std::string const & mdata_payload() const;
    expr const & mdata_expr() const;
    name const & proj_sname() const;
    std::uint64_t proj_idx() const;
    expr const & proj_struct() const;

    void const * raw() const { return m_ptr.get(); }
    bool is_eqp(expr const & other) const { return m_ptr == other.m_ptr; }
    bool is_shared() const { return m_ptr.use_count() > 1; }

    /** \brief Structural equality. Binder names and binder info are ignored. */
    friend bool operator==(expr const & a, expr const & b);
    friend bool operator!=(expr const & a, expr const & b) { return !(a == b); }
};

using exprs = std::vector<expr>;

expr mk_bvar(std::uint64_t idx);
expr mk_fvar(fvar_id id);
expr mk_mvar(name const & n);
expr mk_sort(level const & l);
expr mk_const(name const & n, levels const & ls = {});
expr mk_app(expr const & f, expr const & a);
expr mk_app(expr const & f, exprs const & args);
expr mk_app(expr const & f, std::size_t n, expr const * args);
inline expr mk_app(expr const & f, expr const & a, expr const & b) { return mk_app(mk_app(f, a), b); }
inline expr mk_app(expr const & f, expr const & a, expr const & b, expr const & c) {
    return mk_app(mk_app(mk_app(f, a), b), c);
}
/** \brief f args[n-1] ... args[0] */
expr mk_rev_app(expr const & f, std::size_t n, expr const * args);
expr mk_lambda(name const & n, expr const & dom, expr const & body, binder_info bi = binder_info::Default);
expr mk_pi(name const & n, expr const & dom, expr const & body, binder_info bi = binder_info::Default);
expr mk_arrow(expr const & dom, expr const & body);
expr mk_let(name const & n, expr const & type, expr const & value, expr const & body, bool nondep = false);
expr mk_lit(literal const & l);
expr mk_nat_lit(nat const & v);
expr mk_str_lit(std::string const & s);
expr mk_mdata(std::string const & payload, expr const & e);
expr mk_proj(name const & s, std::uint64_t idx, expr const & e);
expr mk_Prop();
expr mk_Type();

inline bool is_bvar(expr const & e) { return e.kind() == expr_kind::BVar; }
inline bool is_fvar(expr const & e) { return e.kind() == expr_kind::FVar; }
inline bool is_mvar(expr const & e) { return e.kind() == expr_kind::MVar; }
inline bool is_sort(expr const & e) { return e.kind() == expr_kind::Sort; }
inline bool is_constant(expr const & e) { return e.kind() == expr_kind::Const; }
inline bool is_app(expr const & e) { return e.kind() == expr_kind::App; }
inline bool is_lambda(expr const & e) { return e.kind() == expr_kind::Lambda; }
inline bool is_pi(expr const & e) { return e.kind() == expr_kind::Pi; }
inline bool is_binding(expr const & e) { return is_lambda(e) || is_pi(e); }
inline bool is_let(expr const & e) { return e.kind() == expr_kind::Let; }
inline bool is_lit(expr const & e) { return e.kind() == expr_kind::Lit; }
inline bool is_mdata(expr const & e) { return e.kind() == expr_kind::MData; }
inline bool is_proj(expr const & e) { return e.kind() == expr_kind::Proj; }
inline bool is_nat_lit(expr const & e) { return is_lit(e) && e.lit().is_nat(); }
inline bool is_string_lit(expr const & e) { return is_lit(e) && e.lit().is_string(); }
inline bool is_constant(expr const & e, name const & n) { return is_constant(e) && e.const_name() == n; }

expr const & get_app_fn(expr const & e);
/** \brief Head and arguments of an application spine, arguments in application order. */
expr const & get_app_args(expr const & e, exprs & args);
exprs get_app_args(expr const & e);
unsigned get_app_num_args(expr const & e);
/** \brief Argument i of a spine with n arguments (0-based from the head). */
expr const & get_app_arg(expr const & e, unsigned i);
bool is_app_of(expr const & e, name const & n);
bool is_app_of(expr const & e, name const & n, unsigned nargs);
expr const & consume_mdata(expr const & e);

/** \brief Recompute loose-bvar range and fvar/mvar flags without using the cache (used to test the cache). */
std::uint32_t naive_loose_bvar_range(expr const & e);
bool naive_has_fvar(expr const & e);
bool naive_has_mvar(expr const & e);

/** \brief Number of nodes counted as a tree (shared nodes counted each time). Saturates. */
std::uint64_t tree_size(expr const & e, std::uint64_t limit = UINT64_MAX);

std::ostream & operator<<(std::ostream & out, binder_info bi);

struct expr_hash {
    std::size_t operator()(expr const & e) const { return e.hash(); }
};
struct expr_ptr_hash {
    std::size_t operator()(expr const & e) const { return std::hash<void const *>()(e.raw()); }
};
struct expr_ptr_eq {
    bool operator()(expr const & a, expr const & b) const { return a.is_eqp(b); }
};

}
