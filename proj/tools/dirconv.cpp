// dirconv: batch front-end for convolution equations over Dirichlet algebras.

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "dirconv/cli/render.hpp"
#include "dirconv/cli/run.hpp"

int main(int argc, char** argv) {
    using namespace dirconv::cli;

    CLI::App app{"Solve polynomial convolution equations over Dirichlet algebras"};
    app.require_subcommand(1);
    auto* run_cmd = app.add_subcommand("run", "run a problem specification");
    std::string spec_path, out_path;
    format fmt = format::table;
    run_options opt;
    double tolerance = 0;
    const std::map<std::string, format> formats{{"table", format::table}, {"json", format::json}};
    run_cmd->add_option("spec", spec_path, "specification file (JSON)")->required();
    run_cmd->add_option("--format", fmt, "output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    run_cmd->add_option("--out", out_path, "write the result here instead of stdout");
    run_cmd->add_option("--threads", opt.threads, "worker threads inside the library")->check(CLI::Range(1u, 256u));
    auto* tol = run_cmd->add_option("--tolerance", tolerance, "double-mode tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    if (*tol) opt.tolerance = tolerance;

    run_result res;
    try {
        res = run(load_spec(spec_path), opt);
    } catch (const spec_error& e) {
        std::cerr << "dirconv: spec error at " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "dirconv: " << e.what() << '\n';
        return 1;
    }

    const std::string text = render(res.doc, fmt);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out || !(out << text)) {
            std::cerr << "dirconv: cannot write " << out_path << '\n';
            return 1;
        }
    }
    if (res.exit_code == 2 && res.doc.diagnostic) std::cerr << "dirconv: " << res.doc.diagnostic->code << ": " << res.doc.diagnostic->message << '\n';
    return res.exit_code;
}
