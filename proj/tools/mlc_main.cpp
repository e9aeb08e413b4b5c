#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlc/mlc.hpp"

namespace {
constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;
} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mlc: composable multi-label classification experiments"};
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "worker thread count (results are identical at any setting)")
        ->envname("MLC_THREADS")
        ->check(CLI::PositiveNumber);

    std::string config_path;
    std::string dataset_path;

    CLI::App* run = app.add_subcommand("run", "run the cross-validation experiment described by a config file");
    run->add_option("config", config_path, "experiment config file")->required();

    CLI::App* validate = app.add_subcommand("validate", "check a config file without running it");
    validate->add_option("config", config_path, "experiment config file")->required();

    app.add_subcommand("list-methods", "print the registered methods and their parameters");

    CLI::App* stats = app.add_subcommand("stats", "print dataset statistics");
    stats->add_option("dataset", dataset_path, "dataset in multilabel SVMlight format")->required();

    CLI11_PARSE(app, argc, argv);
    mlc::set_num_threads(threads);

    try {
        if (run->parsed()) {
            std::vector<std::string> warnings;
            mlc::ExperimentConfig cfg;
            try {
                cfg = mlc::parse_config(config_path, &warnings);
            } catch (const mlc::ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kExitConfigError;
            }
            for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

            const mlc::ExperimentReport report = mlc::run_cv_experiment(cfg);
            mlc::print_report(report, std::cout);
            if (!cfg.output_prefix.empty()) {
                mlc::write_report_files(report, cfg.output_prefix);
                std::cout << "report written to " << cfg.output_prefix << ".csv and "
                          << cfg.output_prefix << ".json\n";
            }
            return kExitOk;
        }

        if (validate->parsed()) {
            std::vector<std::string> warnings;
            try {
                mlc::ExperimentConfig cfg = mlc::parse_config(config_path, &warnings);
                for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
                const mlc::ValidationReport report = mlc::validate_config(cfg.pipeline);
                if (!report.valid()) {
                    std::cerr << report.to_string();
                    return kExitConfigError;
                }
            } catch (const mlc::ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return kExitConfigError;
            }
            std::cout << "config ok\n";
            return kExitOk;
        }

        if (app.get_subcommand("list-methods")->parsed()) {
            std::cout << mlc::list_methods_text();
            return kExitOk;
        }

        if (stats->parsed()) {
            const mlc::Dataset ds = mlc::load_svmlight_multilabel(dataset_path);
            const mlc::StatsRecord s = mlc::dataset_stats(ds);
            std::cout << "name: " << ds.name() << "\n"
                      << "n: " << s.n << "\n"
                      << "numF: " << s.num_features << "\n"
                      << "numL: " << s.num_labels << "\n"
                      << "cardinality: " << s.cardinality << "\n"
                      << "density: " << s.density << "\n"
                      << "distinct labelsets: " << s.distinct_labelsets << "\n";
            return kExitOk;
        }
    } catch (const mlc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
