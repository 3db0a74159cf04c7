#pragma once
#include "lk/environment.hpp"
#include "lk/frontend/export.hpp"
#include "lk/kernel_exception.hpp"

#include <iosfwd>
#include <optional>

namespace lk::frontend {

/** \brief The declarations cannot be ordered; \c cycle lists one dependency cycle. */
class cycle_error : public std::runtime_error {
    std::vector<std::string> m_cycle;
public:
    explicit cycle_error(std::vector<std::string> cycle);
    std::vector<std::string> const & cycle() const { return m_cycle; }
};

/** \brief Name used to order a declaration: its first declared constant. Examples use a fingerprint of their contents. */
std::string decl_key(declaration const & d);

/** \brief Dependency graph of a list of declarations: <tt>deps[i]</tt> are the declarations \c i mentions.
    References that no declaration provides are left to the checker. */
std::vector<std::vector<std::size_t>> dependencies(std::vector<declaration> const & decls);

/** \brief Order declarations so that each one follows every declaration it mentions. Among the ready ones the
    smallest key goes first, so the result does not depend on the input order. Throws cycle_error. */
std::vector<declaration> toposort(std::vector<declaration> const & decls);

struct check_all_options {
    /** \brief Check only the declaration providing this constant and the ones it depends on. */
    std::optional<name> m_decl;
    bool          m_check = true;
    unsigned      m_jobs  = 1;
    check_options m_kernel;
};

struct decl_result {
    std::string                m_label;
    bool                       m_ok = true;
    std::optional<error_kind>  m_error_kind;
    std::string                m_error;
    double                     m_seconds = 0;
    check_stats                m_stats;
};

struct check_report {
    std::vector<decl_result> m_decls;
    /** \brief Axioms of the final environment, by name. */
    names                    m_axioms;
    double                   m_seconds = 0;

    unsigned num_failures() const;
    check_stats totals() const;
};

/** \brief Check every declaration of the file in dependency order against a fresh environment. A failed
    declaration adds nothing, so declarations depending on it fail as well. Throws cycle_error and, when
    \c m_decl is provided by no declaration, std::invalid_argument. */
check_report check_all(export_file const & file, check_all_options const & opts = {});

struct report_options {
    bool m_stats = false;
    bool m_print_axioms = false;
};

/** \brief Human-readable report. Only lines starting with "time" and the stats columns carry timing. */
void print_report(std::ostream & out, check_report const & r, report_options const & opts = {});

}
