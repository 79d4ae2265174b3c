// conecorr: batch checks for polytope-valued correspondences on cones.
//
//   conecorr check|probe|selections|radstrom|lemma1 --spec FILE
//            [--seed N] [--steps K] [--tol X] [--out FILE] [--sample-interior N]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <conecorr/harness.hpp>

namespace {

int run(const std::string& suite, const std::string& spec_path, const conecorr::Overrides& overrides,
        const std::string& out_path)
{
    using namespace conecorr;
    SuiteResult result;
    try {
        RunSpec spec = load_run_spec(spec_path);
        apply_overrides(spec, overrides);
        if (suite == "check")
            result = run_check(spec);
        else if (suite == "probe")
            result = run_probe(spec);
        else if (suite == "selections")
            result = run_selections(spec);
        else if (suite == "radstrom")
            result = run_radstrom(spec);
        else
            result = run_lemma1(spec);
    } catch (const ResourceCap& e) {
        std::cerr << "conecorr: " << e.what() << "\n";
        return exit_resource_cap;
    } catch (const std::exception& e) {
        std::cerr << "conecorr: " << e.what() << "\n";
        return exit_input_error;
    }

    if (out_path.empty()) {
        std::cout << result.csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "conecorr: cannot write '" << out_path << "'\n";
            return exit_input_error;
        }
        out << result.csv;
    }
    for (const auto& m : result.messages) std::cerr << suite << ": " << m << "\n";
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact checks for polytope-valued correspondences on finitely generated cones"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    conecorr::Overrides overrides;
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    double tol = 0.0;
    std::size_t interior = 0;

    for (const char* name : {"check", "probe", "selections", "radstrom", "lemma1"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--spec", spec_path, "Spec file (JSON)")->required();
        sub->add_option("--seed", seed, "Random seed (overrides the spec)");
        sub->add_option("--steps", steps, "Probe sequence length (overrides the spec)");
        sub->add_option("--tol", tol, "Float tolerance (overrides the spec)");
        sub->add_option("--out", out_path, "Write the CSV report here instead of stdout");
        if (std::string(name) == "selections")
            sub->add_option("--sample-interior", interior, "Also certify N random interior matrices");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : conecorr::exit_input_error;
    }

    CLI::App* chosen = app.get_subcommands().front();
    if (chosen->count("--seed")) overrides.seed = seed;
    if (chosen->count("--steps")) overrides.steps = steps;
    if (chosen->count("--tol")) overrides.tolerance = tol;
    if (chosen->get_option_no_throw("--sample-interior") && chosen->count("--sample-interior"))
        overrides.sample_interior = interior;
    return run(chosen->get_name(), spec_path, overrides, out_path);
}
