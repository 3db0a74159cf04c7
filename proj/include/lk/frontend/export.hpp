#pragma once
#include "lk/declaration.hpp"

#include <iosfwd>
#include <stdexcept>

namespace lk::frontend {

/** \brief Malformed export input, with the 1-based line it occurred on. */
class parse_error : public std::runtime_error {
    unsigned m_line;
public:
    parse_error(unsigned line, std::string const & msg);
    unsigned line() const { return m_line; }
};

/** \brief Contents of an export file: the interned tables in definition order and the declarations in file order.

    Index 0 is pre-bound to the anonymous name in the name table and to zero in the level table. Within a
    table, indices must increase along the file; references must point to earlier lines. */
struct export_file {
    std::vector<name>        m_names;
    std::vector<level>       m_levels;
    std::vector<expr>        m_exprs;
    std::vector<declaration> m_decls;
};

/** \brief Parse the line-oriented export format. Blank lines and lines starting with <tt>--</tt> are skipped. */
export_file parse_export(std::istream & in);
export_file parse_export(std::string const & text);

/** \brief Write declarations in the export format, interning every name, level and term once.
    Throws std::invalid_argument on free variables, metavariables, or names containing whitespace. */
void write_export(std::ostream & out, std::vector<declaration> const & decls);
std::string to_export(std::vector<declaration> const & decls);

}
