#include "corpus.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lk::corpus {

using namespace frontend;

expectation parse_expectation(std::string const & line) {
    std::string const prefix = "-- expect:";
    if (line.rfind(prefix, 0) != 0)
        throw std::invalid_argument("missing '-- expect:' header: " + line);
    std::istringstream in(line.substr(prefix.size()));
    std::string tag;
    in >> tag;
    expectation e;
    if (tag == "ok") {
        e.m_kind = expectation::kind::ok;
    } else if (tag == "cycle") {
        e.m_kind = expectation::kind::cycle;
    } else if (tag == "parse-error") {
        e.m_kind = expectation::kind::parse_error;
        if (!(in >> e.m_line))
            throw std::invalid_argument("parse-error expectation needs a line: " + line);
    } else if (tag == "fail") {
        e.m_kind = expectation::kind::fail;
        in >> e.m_error_kind >> std::ws;
        std::getline(in, e.m_label);
        if (e.m_error_kind.empty() || e.m_label.empty())
            throw std::invalid_argument("fail expectation needs a kind and a label: " + line);
    } else {
        throw std::invalid_argument("unknown expectation: " + line);
    }
    return e;
}

std::string to_string(expectation const & e) {
    switch (e.m_kind) {
    case expectation::kind::ok:          return "ok";
    case expectation::kind::cycle:       return "cycle";
    case expectation::kind::parse_error: return "parse-error " + std::to_string(e.m_line);
    case expectation::kind::fail:        return "fail " + e.m_error_kind + " " + e.m_label;
    }
    return "";
}

namespace {

std::string first_line(std::string const & path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(in, line);
    return line;
}

std::string describe(check_report const & r) {
    std::string s;
    for (decl_result const & d : r.m_decls)
        if (!d.m_ok)
            s += std::string(s.empty() ? "fail " : "; ") + lk::to_string(*d.m_error_kind) + " " + d.m_label;
    return s.empty() ? "ok" : s;
}

bool matches(expectation const & e, check_report const & r) {
    if (e.m_kind == expectation::kind::ok)
        return r.num_failures() == 0;
    if (e.m_kind != expectation::kind::fail)
        return false;
    bool found = false;
    for (decl_result const & d : r.m_decls) {
        if (d.m_ok)
            continue;
        if (d.m_label == e.m_label && lk::to_string(*d.m_error_kind) == e.m_error_kind)
            found = true;
        else if (*d.m_error_kind != error_kind::unknown_constant)
            return false;
    }
    return found;
}

}

std::vector<corpus_case> load_manifest(std::string const & dir) {
    std::ifstream in(dir + "/MANIFEST");
    if (!in)
        throw std::runtime_error("cannot open " + dir + "/MANIFEST");
    std::vector<corpus_case> cases;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        cases.push_back(corpus_case{line, parse_expectation(first_line(dir + "/" + line))});
    }
    return cases;
}

case_result run_case(std::string const & dir, corpus_case const & c, check_all_options const & opts) {
    auto start = std::chrono::steady_clock::now();
    case_result res;
    expectation const & e = c.m_expect;
    try {
        std::ifstream in(dir + "/" + c.m_path);
        if (!in)
            throw std::runtime_error("cannot open " + c.m_path);
        check_report r = check_all(parse_export(in), opts);
        res.m_actual = describe(r);
        res.m_match = matches(e, r);
    } catch (parse_error const & ex) {
        res.m_actual = "parse-error " + std::to_string(ex.line());
        res.m_match = e.m_kind == expectation::kind::parse_error && e.m_line == ex.line();
    } catch (cycle_error const &) {
        res.m_actual = "cycle";
        res.m_match = e.m_kind == expectation::kind::cycle;
    } catch (std::exception const & ex) {
        res.m_actual = std::string("error: ") + ex.what();
    }
    res.m_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}
