// conegeo: numerical verification driver for Minkowski-type integral
// identities, rigidity diagnostics and stability estimates of hypersurfaces
// meeting a Euclidean cone orthogonally.

#include <CLI11.hpp>
#include <iostream>

#include "conegeo/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"conegeo - identity, spectrum and stability verification for "
                 "hypersurfaces in cones"};
    app.require_subcommand(1);

    std::string config_path, out_dir, axis;
    int threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON experiment configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides config and CONEGEO_OUT_DIR)");
        sub->add_option("--threads", threads, "worker threads for node evaluation");
        return sub;
    };

    auto* verify = add_common(app.add_subcommand("verify", "run the integral-identity suites"));
    auto* spectrum = add_common(app.add_subcommand("spectrum", "Neumann eigenvalue refinement study"));
    auto* stability = add_common(app.add_subcommand("stability", "stability inequality report"));
    auto* sweep = add_common(app.add_subcommand("sweep", "parameter sweep of the correction term"));
    sweep->add_option("--axis", axis, "sweep axis: eps | alpha | delta")
        ->check(CLI::IsMember({"eps", "alpha", "delta"}));

    CLI11_PARSE(app, argc, argv);

    try {
        conegeo::ExperimentConfig cfg = conegeo::load_config(config_path);
        if (threads > 0) cfg.threads = threads;
        const auto dir = conegeo::resolve_out_dir(out_dir, cfg);

        conegeo::ResultBundle bundle;
        if (verify->parsed()) bundle = conegeo::run_verify(cfg, dir);
        if (spectrum->parsed()) bundle = conegeo::run_spectrum(cfg, dir);
        if (stability->parsed()) bundle = conegeo::run_stability(cfg, dir);
        if (sweep->parsed()) bundle = conegeo::run_sweep(cfg, axis, dir);

        std::cout << bundle.summary();
        for (const auto& f : bundle.files) std::cout << "wrote " << f.string() << "\n";
        if (!bundle.pass) {
            for (const auto& c : bundle.checks)
                if (!c.pass)
                    std::cerr << "check failed: " << c.name
                              << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
