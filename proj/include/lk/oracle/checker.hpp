#pragma once
#include "lk/oracle/vexpr.hpp"

#include <map>
#include <optional>

namespace lk::oracle {

struct vconstant {
    unsigned m_uvars = 0;
    vexpr    m_type;
};

/** \brief A family of definitional equalities <tt>lhs ≡ rhs</tt>, used left to right by the checker.

    Both sides may mention pattern variables BVar(0) ... BVar(nvars - 1) and universe parameters
    0 ... uvars - 1; the rule stands for all of its closed instances. A definition is the rule
    <tt>c.{u_0 ...} ≡ value</tt> with no pattern variables, and an iota rule has one variable per
    recursor argument and constructor argument. */
struct vdefeq {
    unsigned m_uvars = 0;
    unsigned m_nvars = 0;
    vexpr    m_lhs;
    vexpr    m_rhs;
};

/** \brief Constants (present or blocked) and the definitional equalities they contribute. */
class venv {
    std::map<name, std::optional<vconstant>> m_constants;
    std::map<name, std::vector<vdefeq>>      m_defeqs;
public:
    /** \brief Returns false when the name is already taken. */
    bool add_constant(name const & n, vconstant const & c);
    bool block(name const & n);
    void add_defeq(vdefeq const & d);

    vconstant const * find(name const & n) const;
    bool is_blocked(name const & n) const;
    /** \brief Rules whose left-hand side is headed by the constant \c n. */
    std::vector<vdefeq> const * defeqs(name const & n) const;
    std::size_t num_constants() const { return m_constants.size(); }
    std::size_t num_defeqs() const;
};

/** \brief A typing context; the first element is the type of BVar(0). */
using vctx = std::vector<vexpr>;

struct oracle_options {
    /** \brief Bound on the nesting depth of inference, reduction and conversion calls. */
    unsigned fuel = 2000;
};

/** \brief Algorithmic checker for the judgment <tt>env; n; Γ ⊢ e : α</tt> of the pure theory.

    Inference is syntax directed (variables, sorts, constants, lambdas, foralls with imax,
    applications). Conversion normalizes the head by beta and the rules of the environment and
    compares structurally, with proof irrelevance and eta. It is sound with respect to the
    declarative rules but incomplete: it has no eta for structures, and it fails whenever the fuel
    runs out. */
std::optional<vexpr> check_judgment(venv const & env, unsigned n, vctx const & ctx, vexpr const & e,
                                    oracle_options const & opts = {});

/** \brief Decide <tt>env; n; Γ ⊢ a ≡ b</tt> with the same algorithm; false also means "unknown". */
bool check_defeq(venv const & env, unsigned n, vctx const & ctx, vexpr const & a, vexpr const & b,
                 oracle_options const & opts = {});

/** \brief Head normal form by beta and the environment's rules. Absent when the fuel runs out. */
std::optional<vexpr> vwhnf(venv const & env, vctx const & ctx, vexpr const & e, oracle_options const & opts = {});

}
