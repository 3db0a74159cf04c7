#include "CLI11.hpp"
#include "lk/frontend/export.hpp"
#include "surface.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(std::string const & path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}

/** Leading comment lines of the source are copied to the output, so annotations travel with the file. */
int main(int argc, char ** argv) {
    CLI::App app{"Compile surface declarations to the export format"};
    std::string input;
    std::string output;
    std::string import_dir;
    app.add_option("input", input, "Surface source")->required()->check(CLI::ExistingFile);
    app.add_option("-o,--output", output, "Output file (default: stdout)");
    app.add_option("-I,--import-dir", import_dir, "Directory holding imported sources")->required();
    CLI11_PARSE(app, argc, argv);

    try {
        std::string src = read_file(input);
        std::ostringstream out;
        std::istringstream lines(src);
        for (std::string line; std::getline(lines, line) && line.rfind("--", 0) == 0;)
            out << line << '\n';
        auto resolve = [&](std::string const & n) { return read_file(import_dir + "/" + n + ".lk"); };
        lk::frontend::write_export(out, lk::surface::parse(src, resolve));
        if (output.empty()) {
            std::cout << out.str();
        } else {
            std::ofstream f(output);
            f << out.str();
        }
    } catch (lk::surface::parse_error const & ex) {
        std::cerr << input << ":" << ex.line() << ":" << ex.col() << ": " << ex.what() << '\n';
        return 1;
    } catch (std::exception const & ex) {
        std::cerr << input << ": " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
