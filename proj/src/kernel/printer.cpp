#include "lk/printer.hpp"
#include "lk/instantiate.hpp"

#include <sstream>

namespace lk {

namespace {
class printer {
    std::ostream &      m_out;
    local_ctx const *   m_lctx;
    std::vector<std::string> m_names; // binder names, innermost last

    std::string fresh(name const & n) {
        std::string base = n.is_anonymous() ? "x" : n.to_string();
        std::string r = base;
        unsigned i = 1;
        auto used = [&](std::string const & s) {
            for (std::string const & m : m_names)
                if (m == s)
                    return true;
            return false;
        };
        while (used(r))
            r = base + "_" + std::to_string(i++);
        return r;
    }

    void print_level_arg(level const & l) {
        bool atom = is_param(l) || is_zero(l) || (is_succ(l) && !l.has_param() && !is_max(l) && !is_imax(l));
        std::ostringstream s;
        s << l;
        std::string str = s.str();
        if (atom || str.find(' ') == std::string::npos)
            m_out << str;
        else
            m_out << "(" << str << ")";
    }

    void print_sort(level const & l) {
        if (is_zero(l)) {
            m_out << "Prop";
        } else if (is_succ(l)) {
            if (is_zero(l.succ_of())) {
                m_out << "Type";
            } else {
                m_out << "Type ";
                print_level_arg(l.succ_of());
            }
        } else {
            m_out << "Sort ";
            print_level_arg(l);
        }
    }

    static bool is_atomic(expr const & e) {
        switch (e.kind()) {
        case expr_kind::BVar: case expr_kind::FVar: case expr_kind::MVar:
        case expr_kind::Const: case expr_kind::Lit:
            return true;
        case expr_kind::Sort:
            return is_zero(e.sort_level()) || e.sort_level() == mk_level_one();
        default:
            return false;
        }
    }

    void print_child(expr const & e) {
        if (is_atomic(e)) {
            print(e);
        } else {
            m_out << "(";
            print(e);
            m_out << ")";
        }
    }

    void print_binder_open(binder_info bi) {
        switch (bi) {
        case binder_info::Default:        m_out << "("; break;
        case binder_info::Implicit:       m_out << "{"; break;
        case binder_info::StrictImplicit: m_out << "{{"; break;
        case binder_info::InstImplicit:   m_out << "["; break;
        }
    }

    void print_binder_close(binder_info bi) {
        switch (bi) {
        case binder_info::Default:        m_out << ")"; break;
        case binder_info::Implicit:       m_out << "}"; break;
        case binder_info::StrictImplicit: m_out << "}}"; break;
        case binder_info::InstImplicit:   m_out << "]"; break;
        }
    }

public:
    printer(std::ostream & out, local_ctx const * lctx) : m_out(out), m_lctx(lctx) {}

    void print(expr const & e) {
        switch (e.kind()) {
        case expr_kind::BVar: {
            std::uint64_t i = e.bvar_idx();
            if (i < m_names.size())
                m_out << m_names[m_names.size() - 1 - i];
            else
                m_out << "#" << (i - m_names.size());
            return;
        }
        case expr_kind::FVar:
            if (m_lctx) {
                if (local_decl const * d = m_lctx->find(e.fvar())) {
                    m_out << d->get_user_name();
                    return;
                }
            }
            m_out << "_fvar." << e.fvar().m_idx;
            return;
        case expr_kind::MVar:
            m_out << "?" << e.mvar_name();
            return;
        case expr_kind::Sort:
            print_sort(e.sort_level());
            return;
        case expr_kind::Const:
            m_out << e.const_name();
            if (!e.const_levels().empty()) {
                m_out << ".{";
                for (std::size_t i = 0; i < e.const_levels().size(); i++) {
                    if (i > 0)
                        m_out << ", ";
                    m_out << e.const_levels()[i];
                }
                m_out << "}";
            }
            return;
        case expr_kind::App: {
            exprs args;
            expr const & f = get_app_args(e, args);
            print_child(f);
            for (expr const & a : args) {
                m_out << " ";
                print_child(a);
            }
            return;
        }
        case expr_kind::Lambda: {
            m_out << "fun";
            expr it = e;
            std::size_t pushed = 0;
            while (is_lambda(it)) {
                std::string n = fresh(it.binding_name());
                m_out << " ";
                print_binder_open(it.binding_info());
                m_out << n << " : ";
                print(it.binding_domain());
                print_binder_close(it.binding_info());
                m_names.push_back(n);
                pushed++;
                it = it.binding_body();
            }
            m_out << " => ";
            print(it);
            m_names.resize(m_names.size() - pushed);
            return;
        }
        case expr_kind::Pi: {
            if (!has_loose_bvar(e.binding_body(), 0) && e.binding_info() == binder_info::Default) {
                if (is_pi(e.binding_domain()) || is_lambda(e.binding_domain()) || is_let(e.binding_domain()))
                    print_child(e.binding_domain());
                else
                    print(e.binding_domain());
                m_out << " -> ";
                m_names.push_back("_");
                print(e.binding_body());
                m_names.pop_back();
                return;
            }
            std::string n = fresh(e.binding_name());
            print_binder_open(e.binding_info());
            m_out << n << " : ";
            print(e.binding_domain());
            print_binder_close(e.binding_info());
            m_out << " -> ";
            m_names.push_back(n);
            print(e.binding_body());
            m_names.pop_back();
            return;
        }
        case expr_kind::Let: {
            std::string n = fresh(e.let_name());
            m_out << "let " << n << " : ";
            print(e.let_type());
            m_out << " := ";
            print(e.let_value());
            m_out << "; ";
            m_names.push_back(n);
            print(e.let_body());
            m_names.pop_back();
            return;
        }
        case expr_kind::Lit:
            if (e.lit().is_nat()) {
                m_out << e.lit().get_nat();
            } else {
                m_out << '"';
                for (char c : e.lit().get_string()) {
                    if (c == '"' || c == '\\')
                        m_out << '\\' << c;
                    else if (c == '\n')
                        m_out << "\\n";
                    else
                        m_out << c;
                }
                m_out << '"';
            }
            return;
        case expr_kind::MData:
            m_out << "mdata ";
            print_child(e.mdata_expr());
            return;
        case expr_kind::Proj:
            m_out << "proj " << e.proj_sname() << " " << e.proj_idx() << " ";
            print_child(e.proj_struct());
            return;
        }
    }
};
}

void print_expr(std::ostream & out, expr const & e, local_ctx const * lctx) {
    printer(out, lctx).print(e);
}

std::string to_string(expr const & e, local_ctx const * lctx) {
    std::ostringstream s;
    print_expr(s, e, lctx);
    return s.str();
}

std::ostream & operator<<(std::ostream & out, expr const & e) {
    print_expr(out, e);
    return out;
}

}
