#include "lk/literals.hpp"

#include <stdexcept>

namespace lk {

expr nat_lit_ctor_view(expr const & e) {
    if (!is_nat_lit(e))
        throw std::invalid_argument("nat_lit_ctor_view: not a Nat literal");
    nat const & v = e.lit().get_nat();
    if (v == 0)
        return mk_const(name("Nat.zero"));
    return mk_app(mk_const(name("Nat.succ")), mk_nat_lit(v - 1));
}

expr nat_lit_unary(expr const & e) {
    if (!is_nat_lit(e))
        throw std::invalid_argument("nat_lit_unary: not a Nat literal");
    expr r = mk_const(name("Nat.zero"));
    expr succ = mk_const(name("Nat.succ"));
    for (nat i = 0; i < e.lit().get_nat(); ++i)
        r = mk_app(succ, r);
    return r;
}

std::vector<std::uint32_t> utf8_decode(std::string const & s) {
    std::vector<std::uint32_t> r;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        unsigned len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xe ? 3 : (c >> 3) == 0x1e ? 4 : 0;
        if (len == 0 || i + len > s.size()) {
            r.push_back(0xfffd);
            i++;
            continue;
        }
        std::uint32_t cp = len == 1 ? c : len == 2 ? (c & 0x1f) : len == 3 ? (c & 0x0f) : (c & 0x07);
        bool ok = true;
        for (unsigned k = 1; k < len; k++) {
            unsigned char d = static_cast<unsigned char>(s[i + k]);
            if ((d >> 6) != 0x2) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (d & 0x3f);
        }
        if (!ok) {
            r.push_back(0xfffd);
            i++;
            continue;
        }
        r.push_back(cp);
        i += len;
    }
    return r;
}

std::string utf8_encode(std::vector<std::uint32_t> const & cps) {
    std::string r;
    for (std::uint32_t cp : cps) {
        if (cp < 0x80) {
            r += static_cast<char>(cp);
        } else if (cp < 0x800) {
            r += static_cast<char>(0xc0 | (cp >> 6));
            r += static_cast<char>(0x80 | (cp & 0x3f));
        } else if (cp < 0x10000) {
            r += static_cast<char>(0xe0 | (cp >> 12));
            r += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            r += static_cast<char>(0x80 | (cp & 0x3f));
        } else {
            r += static_cast<char>(0xf0 | (cp >> 18));
            r += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
            r += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
            r += static_cast<char>(0x80 | (cp & 0x3f));
        }
    }
    return r;
}

expr str_lit_view(expr const & e) {
    if (!is_string_lit(e))
        throw std::invalid_argument("str_lit_view: not a String literal");
    expr char_type = mk_const(name("Char"));
    levels lzero{mk_level_zero()};
    expr r = mk_app(mk_const(name("List.nil"), lzero), char_type);
    expr cons = mk_app(mk_const(name("List.cons"), lzero), char_type);
    expr of_nat = mk_const(name("Char.ofNat"));
    std::vector<std::uint32_t> cps = utf8_decode(e.lit().get_string());
    for (std::size_t i = cps.size(); i-- > 0;)
        r = mk_app(mk_app(cons, mk_app(of_nat, mk_nat_lit(nat(cps[i])))), r);
    return mk_app(mk_const(name("String.mk")), r);
}

std::optional<expr> fold_str_lit(expr const & e) {
    if (!is_app(e) || !is_constant(e.app_fn(), name("String.mk")))
        return std::nullopt;
    std::vector<std::uint32_t> cps;
    expr it = e.app_arg();
    while (true) {
        exprs args;
        expr const & f = get_app_args(it, args);
        if (!is_constant(f))
            return std::nullopt;
        if (f.const_name() == name("List.nil") && args.size() == 1)
            break;
        if (f.const_name() != name("List.cons") || args.size() != 3)
            return std::nullopt;
        expr const & c = args[1];
        if (!is_app(c) || !is_constant(c.app_fn(), name("Char.ofNat")) || !is_nat_lit(c.app_arg()))
            return std::nullopt;
        nat const & v = c.app_arg().lit().get_nat();
        if (v > 0x10ffff)
            return std::nullopt;
        cps.push_back(static_cast<std::uint32_t>(v));
        it = args[2];
    }
    return mk_str_lit(utf8_encode(cps));
}

}
