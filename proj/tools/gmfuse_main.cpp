#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gmfuse/cli.hpp"
#include "gmfuse/kernels.hpp"

namespace {

void apply_kernel_choice(const std::string& choice) {
    using gmfuse::kernels::Backend;
    if (choice == "scalar") gmfuse::kernels::force_backend(Backend::scalar);
    if (choice == "avx2") gmfuse::kernels::force_backend(Backend::avx2);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classifier-ensemble fusion with generalized mixture combiners"};
    app.require_subcommand(1);

    std::string kernels_choice;
    app.add_option("--kernels", kernels_choice, "Force kernel backend (scalar, avx2)")
        ->check(CLI::IsMember({"scalar", "avx2"}));

    // run
    auto* run = app.add_subcommand("run", "Run a cross-validation experiment from a config");
    std::string config_path;
    std::string out_dir;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false;
    std::size_t threads = 0;
    bool threads_set = false;
    run->add_option("config", config_path, "Experiment config file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides config)");
    run->add_option("--seed", run_seed, "Master seed (overrides config)")
        ->each([&run_seed_set](const std::string&) { run_seed_set = true; });
    run->add_option("--threads", threads, "Worker threads, 1 = serial (overrides config)")
        ->each([&threads_set](const std::string&) { threads_set = true; });

    // combine
    auto* combine = app.add_subcommand("combine", "Fuse one score matrix and print the trace");
    std::string score_path;
    std::string combiner_name;
    std::string tie_policy = "lowest-index";
    std::uint64_t combine_seed = 0;
    bool normalize = false;
    combine->add_option("scorefile", score_path, "Score matrix file, one member per row")
        ->required();
    combine->add_option("--combiner", combiner_name, "min, max, arith, prod, vote, h_med, "
                                                     "h_arith, h_max, h_min")
        ->required();
    combine->add_option("--tie-policy", tie_policy, "lowest-index or seeded-random");
    combine->add_option("--seed", combine_seed, "Seed for the seeded-random tie policy");
    combine->add_flag("--normalize", normalize, "Renormalize rows that do not sum to 1");
    std::string combine_out;
    combine->add_option("--out", combine_out, "Also write the trace to this file");

    // props
    auto* props = app.add_subcommand("props", "Run the algebraic property suite");
    std::size_t samples = 10000;
    std::uint64_t props_seed = 20240405;
    props->add_option("--samples", samples, "Random samples per property");
    props->add_option("--seed", props_seed, "Sampling seed");
    std::string props_out;
    props->add_option("--out", props_out, "Also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : gmfuse::cli::kExitUsage;
    }

    if (!kernels_choice.empty()) apply_kernel_choice(kernels_choice);

    try {
        if (run->parsed()) {
            gmfuse::eval::ExperimentConfig config = gmfuse::cli::parse_config_file(config_path);
            if (!out_dir.empty()) config.output_dir = out_dir;
            if (run_seed_set) config.seed = run_seed;
            if (threads_set) config.threads = threads;
            return gmfuse::cli::cmd_run(config, std::cout, std::cerr);
        }
        if (combine->parsed()) {
            std::ostringstream text;
            const int code = gmfuse::cli::cmd_combine(score_path, combiner_name, tie_policy,
                                                      combine_seed, normalize, text,
                                                      std::cerr);
            std::cout << text.str();
            if (!combine_out.empty()) std::ofstream(combine_out) << text.str();
            return code;
        }
        if (props->parsed()) {
            std::ostringstream text;
            const int code = gmfuse::cli::cmd_props(samples, props_seed, text, std::cerr);
            std::cout << text.str();
            if (!props_out.empty()) std::ofstream(props_out) << text.str();
            return code;
        }
    } catch (const gmfuse::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gmfuse::cli::kExitUsage;
    } catch (const gmfuse::ArityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gmfuse::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gmfuse::cli::kExitData;
    }
    return gmfuse::cli::kExitUsage;
}
