#include "CLI11.hpp"
#include "lk/frontend/check.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace lk;
using namespace lk::frontend;

namespace {

/** \brief Default fuel: LKCHECK_FUEL when set to a positive number, else the kernel default. */
unsigned default_fuel() {
    unsigned fuel = check_options{}.fuel;
    if (char const * s = std::getenv("LKCHECK_FUEL")) {
        try {
            unsigned long v = std::stoul(s);
            if (v > 0)
                fuel = static_cast<unsigned>(v);
        } catch (std::exception const &) {
            std::cerr << "warning: ignoring LKCHECK_FUEL=" << s << '\n';
        }
    }
    return fuel;
}

}

int main(int argc, char ** argv) {
    CLI::App app{"Type checker for exported environments"};
    app.require_subcommand(1);

    CLI::App * check = app.add_subcommand("check", "Check every declaration of an export file");
    std::string file;
    std::string decl;
    check_all_options opts;
    report_options ropts;
    opts.m_kernel.fuel = default_fuel();
    bool no_check = false;
    check->add_option("file", file, "Export file")->required()->check(CLI::ExistingFile);
    check->add_option("--decl", decl, "Check only this constant's declaration and its dependencies");
    check->add_option("--fuel", opts.m_kernel.fuel, "Maximum nesting depth of kernel calls (LKCHECK_FUEL)")
        ->check(CLI::PositiveNumber);
    check->add_flag("--no-check", no_check, "Add declarations without type checking them");
    check->add_option("--jobs", opts.m_jobs, "Worker threads")->check(CLI::PositiveNumber);
    check->add_flag("--stats", ropts.m_stats, "Print counters and timings");
    check->add_flag("--print-axioms", ropts.m_print_axioms, "List the axioms of the checked environment");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    opts.m_check = !no_check;
    if (!decl.empty())
        opts.m_decl = name(decl);
    try {
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open " << file << '\n';
            return 2;
        }
        export_file f = parse_export(in);
        check_report r = check_all(f, opts);
        print_report(std::cout, r, ropts);
        for (decl_result const & d : r.m_decls)
            if (!d.m_ok)
                std::cerr << "error: " << d.m_label << ": " << d.m_error.substr(0, d.m_error.find('\n')) << '\n';
        return r.num_failures() == 0 ? 0 : 1;
    } catch (parse_error const & ex) {
        std::cerr << file << ":" << ex.what() << '\n';
    } catch (std::exception const & ex) {
        std::cerr << "error: " << ex.what() << '\n';
    }
    return 2;
}
