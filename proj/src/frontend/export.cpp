#include "lk/frontend/export.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace lk::frontend {

parse_error::parse_error(unsigned line, std::string const & msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), m_line(line) {}

namespace {

class reader {
    export_file              m_file;
    std::unordered_map<std::uint64_t, name>  m_name_idx{{0, name()}};
    std::unordered_map<std::uint64_t, level> m_level_idx{{0, mk_level_zero()}};
    std::unordered_map<std::uint64_t, expr>  m_expr_idx;
    std::uint64_t            m_next_name = 1, m_next_level = 1, m_next_expr = 0;
    unsigned                 m_line = 0;
    std::vector<std::string> m_toks;
    std::size_t              m_pos = 0;
    std::string              m_text;

    [[noreturn]] void fail(std::string const & msg) const { throw parse_error(m_line, msg); }

    bool at_end() const { return m_pos >= m_toks.size(); }

    std::string const & tok() {
        if (at_end())
            fail("unexpected end of line");
        return m_toks[m_pos++];
    }

    std::uint64_t num() {
        std::string const & t = tok();
        std::uint64_t r = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), r);
        if (ec != std::errc() || p != t.data() + t.size())
            fail("expected a number, got '" + t + "'");
        return r;
    }

    template <class T>
    T const & ref(std::unordered_map<std::uint64_t, T> const & table, char const * what) {
        std::uint64_t i = num();
        auto it = table.find(i);
        if (it == table.end())
            fail(std::string("reference to undefined ") + what + " " + std::to_string(i));
        return it->second;
    }

    name const & nref() { return ref(m_name_idx, "name"); }
    level const & uref() { return ref(m_level_idx, "level"); }
    expr const & eref() { return ref(m_expr_idx, "expression"); }

    names lparams() {
        names r;
        while (!at_end())
            r.push_back(nref());
        return r;
    }

    void done() {
        if (!at_end())
            fail("trailing tokens");
    }

    binder_info info() {
        std::string const & t = tok();
        if (t == "#BD") return binder_info::Default;
        if (t == "#BI") return binder_info::Implicit;
        if (t == "#BS") return binder_info::StrictImplicit;
        if (t == "#BC") return binder_info::InstImplicit;
        fail("unknown binder info '" + t + "'");
    }

    std::string hex_bytes() {
        std::string const & t = tok();
        if (t.size() % 2 != 0)
            fail("odd number of hex digits");
        std::string r;
        for (std::size_t i = 0; i < t.size(); i += 2) {
            unsigned v = 0;
            auto [p, ec] = std::from_chars(t.data() + i, t.data() + i + 2, v, 16);
            if (ec != std::errc() || p != t.data() + i + 2)
                fail("bad hex digits '" + t + "'");
            r.push_back(static_cast<char>(v));
        }
        return r;
    }

    /** \brief An item of a table. Indices of a table increase along the file; the writer leaves no gaps. */
    template <class T>
    void define(std::vector<T> & items, std::unordered_map<std::uint64_t, T> & table, std::uint64_t & next,
                std::uint64_t idx, T const & v, char const * what) {
        if (idx < next)
            fail(std::string(what) + " index " + std::to_string(idx) + " is already taken");
        next = idx + 1;
        items.push_back(v);
        table.emplace(idx, v);
    }

    void item(std::uint64_t idx, std::string const & tag) {
        if (tag == "#NS") {
            name const & p = nref();
            std::string const & s = tok();
            done();
            define(m_file.m_names, m_name_idx, m_next_name, idx, name(p, s), "name");
        } else if (tag == "#NI") {
            name const & p = nref();
            std::uint64_t n = num();
            done();
            define(m_file.m_names, m_name_idx, m_next_name, idx, name(p, n), "name");
        } else if (tag == "#US") {
            level l = mk_succ(uref());
            done();
            define(m_file.m_levels, m_level_idx, m_next_level, idx, l, "level");
        } else if (tag == "#UM" || tag == "#UIM") {
            level a = uref();
            level b = uref();
            done();
            define(m_file.m_levels, m_level_idx, m_next_level, idx, tag == "#UM" ? mk_max_core(a, b) : mk_imax_core(a, b), "level");
        } else if (tag == "#UP") {
            level l = mk_param(nref());
            done();
            define(m_file.m_levels, m_level_idx, m_next_level, idx, l, "level");
        } else {
            define(m_file.m_exprs, m_expr_idx, m_next_expr, idx, expression(tag), "expression");
        }
    }

    expr expression(std::string const & tag) {
        expr r;
        if (tag == "#EV") {
            r = mk_bvar(num());
        } else if (tag == "#ES") {
            r = mk_sort(uref());
        } else if (tag == "#EC") {
            name n = nref();
            levels ls;
            while (!at_end())
                ls.push_back(uref());
            r = mk_const(n, ls);
        } else if (tag == "#EA") {
            expr f = eref();
            r = mk_app(f, eref());
        } else if (tag == "#EL" || tag == "#EP") {
            binder_info bi = info();
            name n = nref();
            expr d = eref();
            expr b = eref();
            r = tag == "#EL" ? mk_lambda(n, d, b, bi) : mk_pi(n, d, b, bi);
        } else if (tag == "#EZ") {
            name n = nref();
            expr t = eref();
            expr v = eref();
            r = mk_let(n, t, v, eref());
        } else if (tag == "#ELN") {
            std::string const & t = tok();
            if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
                fail("bad natural number literal '" + t + "'");
            r = mk_nat_lit(nat(t));
        } else if (tag == "#ELS") {
            r = mk_str_lit(at_end() ? std::string() : hex_bytes());
        } else if (tag == "#EM") {
            r = mk_mdata("", eref());
        } else if (tag == "#EJ") {
            name n = nref();
            std::uint64_t i = num();
            r = mk_proj(n, i, eref());
        } else {
            fail("unknown tag '" + tag + "'");
        }
        done();
        return r;
    }

    reducibility_hints hints() {
        std::string const & t = tok();
        if (t == "A")
            return reducibility_hints::mk_abbrev();
        if (t == "O")
            return reducibility_hints::mk_opaque();
        if (t == "R")
            return reducibility_hints::mk_regular(static_cast<std::uint32_t>(num()));
        fail("unknown reducibility hint '" + t + "'");
    }

    void command(std::string const & tag, std::istream & in) {
        auto & decls = m_file.m_decls;
        if (tag == "#AX") {
            name n = nref();
            expr t = eref();
            decls.push_back(axiom_decl{n, lparams(), t});
        } else if (tag == "#DEF") {
            name n = nref();
            expr t = eref();
            expr v = eref();
            reducibility_hints h = hints();
            decls.push_back(definition_decl{n, lparams(), t, v, h});
        } else if (tag == "#THM" || tag == "#OPAQ") {
            name n = nref();
            expr t = eref();
            expr v = eref();
            names ls = lparams();
            if (tag == "#THM")
                decls.push_back(theorem_decl{n, ls, t, v});
            else
                decls.push_back(opaque_decl{n, ls, t, v});
        } else if (tag == "#QUOT") {
            done();
            decls.push_back(quot_decl{});
        } else if (tag == "#EX") {
            expr t = eref();
            expr v = eref();
            decls.push_back(example_decl{lparams(), t, v});
        } else if (tag == "#IND") {
            inductive_decl d;
            d.m_nparams = static_cast<unsigned>(num());
            std::uint64_t ntypes = num();
            d.m_lparams = lparams();
            for (std::uint64_t i = 0; i < ntypes; i++) {
                expect_line(in, "#TYPE");
                inductive_type t;
                t.m_name = nref();
                t.m_type = eref();
                std::uint64_t nctors = num();
                done();
                for (std::uint64_t j = 0; j < nctors; j++) {
                    expect_line(in, "#CTOR");
                    name cn = nref();
                    expr ct = eref();
                    done();
                    t.m_ctors.push_back(constructor_decl{cn, ct});
                }
                d.m_types.push_back(std::move(t));
            }
            decls.push_back(std::move(d));
        } else if (tag == "#TYPE" || tag == "#CTOR") {
            fail(tag + " outside of an #IND block");
        } else {
            fail("unknown tag '" + tag + "'");
        }
    }

    /** \brief Read the next significant line into the token buffer. */
    bool next_line(std::istream & in) {
        while (std::getline(in, m_text)) {
            m_line++;
            m_toks.clear();
            m_pos = 0;
            std::istringstream ss(m_text);
            std::string t;
            while (ss >> t)
                m_toks.push_back(t);
            if (m_toks.empty() || m_toks[0].rfind("--", 0) == 0)
                continue;
            return true;
        }
        return false;
    }

    void expect_line(std::istream & in, char const * tag) {
        if (!next_line(in))
            fail(std::string("unexpected end of file, expected ") + tag);
        if (tok() != tag)
            fail(std::string("expected ") + tag);
    }

public:
    reader() {
        m_file.m_names.push_back(name());
        m_file.m_levels.push_back(mk_level_zero());
    }

    export_file run(std::istream & in) {
        while (next_line(in)) {
            std::string const & first = tok();
            if (first[0] == '#') {
                command(first, in);
                done();
            } else {
                std::uint64_t idx;
                auto [p, ec] = std::from_chars(first.data(), first.data() + first.size(), idx);
                if (ec != std::errc() || p != first.data() + first.size())
                    fail("expected an index or a command, got '" + first + "'");
                item(idx, tok());
            }
        }
        return std::move(m_file);
    }
};

class writer {
    std::ostream & m_out;
    std::map<name, std::uint64_t>                           m_names;
    // items are shared by their exact line, which keeps binder names that structural equality ignores
    std::unordered_map<std::string, std::uint64_t>          m_levels;
    std::unordered_map<std::string, std::uint64_t>          m_exprs;
    std::unordered_map<void const *, std::uint64_t>         m_visited;
    std::vector<expr>                                       m_keep_alive;

    std::uint64_t emit(std::unordered_map<std::string, std::uint64_t> & table, std::string const & line,
                       std::uint64_t first) {
        if (auto it = table.find(line); it != table.end())
            return it->second;
        std::uint64_t i = table.size() + first;
        m_out << i << ' ' << line << '\n';
        table.emplace(line, i);
        return i;
    }

    std::uint64_t write(name const & n) {
        if (n.is_anonymous())
            return 0;
        if (auto it = m_names.find(n); it != m_names.end())
            return it->second;
        std::uint64_t p = write(n.get_prefix());
        std::uint64_t i = m_names.size() + 1;
        if (n.is_numeral()) {
            m_out << i << " #NI " << p << ' ' << n.get_numeral() << '\n';
        } else {
            std::string const & s = n.get_string();
            if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos || s.rfind("--", 0) == 0)
                throw std::invalid_argument("name component cannot be exported: '" + s + "'");
            m_out << i << " #NS " << p << ' ' << s << '\n';
        }
        m_names.emplace(n, i);
        return i;
    }

    std::uint64_t write(level const & l) {
        if (is_zero(l))
            return 0;
        std::ostringstream line;
        switch (l.kind()) {
        case level_kind::Succ: line << "#US " << write(l.succ_of()); break;
        case level_kind::Max:  line << "#UM " << write(l.lhs()) << ' ' << write(l.rhs()); break;
        case level_kind::IMax: line << "#UIM " << write(l.lhs()) << ' ' << write(l.rhs()); break;
        case level_kind::Param: line << "#UP " << write(l.param_id()); break;
        case level_kind::Zero: break;
        }
        return emit(m_levels, line.str(), 1);
    }

    static char const * info(binder_info bi) {
        switch (bi) {
        case binder_info::Default:        return "#BD";
        case binder_info::Implicit:       return "#BI";
        case binder_info::StrictImplicit: return "#BS";
        case binder_info::InstImplicit:   return "#BC";
        }
        return "#BD";
    }

    std::uint64_t write(expr const & e) {
        if (auto it = m_visited.find(e.raw()); it != m_visited.end())
            return it->second;
        std::ostringstream line;
        switch (e.kind()) {
        case expr_kind::BVar:
            line << "#EV " << e.bvar_idx();
            break;
        case expr_kind::Sort:
            line << "#ES " << write(e.sort_level());
            break;
        case expr_kind::Const: {
            line << "#EC " << write(e.const_name());
            for (level const & l : e.const_levels())
                line << ' ' << write(l);
            break;
        }
        case expr_kind::App: {
            std::uint64_t f = write(e.app_fn());
            line << "#EA " << f << ' ' << write(e.app_arg());
            break;
        }
        case expr_kind::Lambda:
        case expr_kind::Pi: {
            std::uint64_t n = write(e.binding_name());
            std::uint64_t d = write(e.binding_domain());
            std::uint64_t b = write(e.binding_body());
            line << (is_lambda(e) ? "#EL " : "#EP ") << info(e.binding_info()) << ' ' << n << ' ' << d << ' ' << b;
            break;
        }
        case expr_kind::Let: {
            std::uint64_t n = write(e.let_name());
            std::uint64_t t = write(e.let_type());
            std::uint64_t v = write(e.let_value());
            line << "#EZ " << n << ' ' << t << ' ' << v << ' ' << write(e.let_body());
            break;
        }
        case expr_kind::Lit:
            if (e.lit().is_nat()) {
                line << "#ELN " << e.lit().get_nat();
            } else {
                static char const digits[] = "0123456789abcdef";
                line << "#ELS";
                std::string const & s = e.lit().get_string();
                if (!s.empty())
                    line << ' ';
                for (unsigned char c : s)
                    line << digits[c >> 4] << digits[c & 15];
            }
            break;
        case expr_kind::MData:
            line << "#EM " << write(e.mdata_expr());
            break;
        case expr_kind::Proj: {
            std::uint64_t n = write(e.proj_sname());
            line << "#EJ " << n << ' ' << e.proj_idx() << ' ' << write(e.proj_struct());
            break;
        }
        case expr_kind::FVar:
        case expr_kind::MVar:
            throw std::invalid_argument("free variables and metavariables cannot be exported");
        }
        std::uint64_t i = emit(m_exprs, line.str(), 0);
        m_visited.emplace(e.raw(), i);
        m_keep_alive.push_back(e);
        return i;
    }

    std::string lparams(names const & ls) {
        std::string r;
        for (name const & n : ls)
            r += ' ' + std::to_string(write(n));
        return r;
    }

    static std::string hint(reducibility_hints const & h) {
        switch (h.kind()) {
        case reducibility_hints_kind::Abbrev:  return "A";
        case reducibility_hints_kind::Opaque:  return "O";
        case reducibility_hints_kind::Regular: return "R " + std::to_string(h.height());
        }
        return "O";
    }

    /** \brief Entries referenced by a command are written before the command line itself. */
    template <class F>
    void with_line(F && f) {
        std::ostringstream line;
        f(line);
        m_out << line.str() << '\n';
    }

public:
    explicit writer(std::ostream & out) : m_out(out) {}

    void operator()(axiom_decl const & d) {
        with_line([&](std::ostream & l) {
            std::uint64_t n = write(d.m_name);
            std::uint64_t t = write(d.m_type);
            std::string ls = lparams(d.m_lparams);
            l << "#AX " << n << ' ' << t << ls;
        });
    }
    void operator()(definition_decl const & d) {
        with_line([&](std::ostream & l) {
            std::uint64_t n = write(d.m_name);
            std::uint64_t t = write(d.m_type);
            std::uint64_t v = write(d.m_value);
            std::string ls = lparams(d.m_lparams);
            l << "#DEF " << n << ' ' << t << ' ' << v << ' ' << hint(d.m_hints) << ls;
        });
    }
    template <class D>
    void valued(char const * tag, D const & d) {
        with_line([&](std::ostream & l) {
            std::uint64_t n = write(d.m_name);
            std::uint64_t t = write(d.m_type);
            std::uint64_t v = write(d.m_value);
            std::string ls = lparams(d.m_lparams);
            l << tag << ' ' << n << ' ' << t << ' ' << v << ls;
        });
    }
    void operator()(theorem_decl const & d) { valued("#THM", d); }
    void operator()(opaque_decl const & d) { valued("#OPAQ", d); }
    void operator()(quot_decl const &) { m_out << "#QUOT\n"; }
    void operator()(example_decl const & d) {
        with_line([&](std::ostream & l) {
            std::uint64_t t = write(d.m_type);
            std::uint64_t v = write(d.m_value);
            std::string ls = lparams(d.m_lparams);
            l << "#EX " << t << ' ' << v << ls;
        });
    }
    void operator()(inductive_decl const & d) {
        // the block must be contiguous, so everything it references is written first
        std::vector<std::string> lines;
        lines.push_back("#IND " + std::to_string(d.m_nparams) + ' ' + std::to_string(d.m_types.size()) +
                        lparams(d.m_lparams));
        for (inductive_type const & t : d.m_types) {
            std::uint64_t n = write(t.m_name);
            std::uint64_t ty = write(t.m_type);
            lines.push_back("#TYPE " + std::to_string(n) + ' ' + std::to_string(ty) + ' ' +
                            std::to_string(t.m_ctors.size()));
            for (constructor_decl const & c : t.m_ctors) {
                std::uint64_t cn = write(c.m_name);
                std::uint64_t ct = write(c.m_type);
                lines.push_back("#CTOR " + std::to_string(cn) + ' ' + std::to_string(ct));
            }
        }
        for (std::string const & l : lines)
            m_out << l << '\n';
    }
};

}

export_file parse_export(std::istream & in) { return reader().run(in); }

export_file parse_export(std::string const & text) {
    std::istringstream in(text);
    return parse_export(in);
}

void write_export(std::ostream & out, std::vector<declaration> const & decls) {
    writer w(out);
    for (declaration const & d : decls)
        std::visit(w, d);
}

std::string to_export(std::vector<declaration> const & decls) {
    std::ostringstream out;
    write_export(out, decls);
    return out.str();
}

}
