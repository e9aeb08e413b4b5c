#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "mlc/experiment.hpp"
#include "support/synthetic.hpp"

using namespace mlc;

namespace {

const char* kSampleConfig = R"(# three-stage sample experiment
[dataset]
path = data/scene.svm
name = scene

[method.1]
name = PCA
dim = numF*0.5

[method.2]
name = CBMLC
k = 2

[method.3]
name = rCC

[base]
name = linear_svm
C = 1.0

[threshold]
type = Scut
param = 0.5

[run]
numCV = 5
seed = 42
output = out/scene
)";

Dataset toy_dataset(int n, std::uint64_t seed) {
    return Dataset(FeatureMatrix::from_dense(synthetic::random_matrix(n, 4, seed)),
                   synthetic::random_labels(n, 3, seed + 1, 0.4), "toy");
}

} // namespace

TEST_CASE("parse_config: the sample layout maps onto the pipeline") {
    const ExperimentConfig cfg = parse_config_text(kSampleConfig);
    CHECK(cfg.dataset_path == "data/scene.svm");
    CHECK(cfg.dataset_name == "scene");
    REQUIRE(cfg.pipeline.stages.size() == 3);
    CHECK(cfg.pipeline.stages[0].name == "PCA");
    CHECK(cfg.pipeline.stages[0].params.at("dim") == "numF*0.5");
    CHECK(cfg.pipeline.stages[1].name == "CBMLC");
    CHECK(cfg.pipeline.stages[2].name == "rCC");
    CHECK(cfg.pipeline.base_name == "linear_svm");
    CHECK(cfg.pipeline.threshold.type == "Scut");
    CHECK(cfg.pipeline.threshold.param == "0.5");
    CHECK(cfg.num_cv == 5);
    CHECK(cfg.seed() == 42);
    CHECK(cfg.output_prefix == "out/scene");
}

TEST_CASE("parse_config: errors carry the source location") {
    auto expect_error = [](const std::string& text, const std::string& needle) {
        try {
            parse_config_text(text, "test.ini");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string what = e.what();
            INFO(what);
            CHECK(what.find(needle) != std::string::npos);
        }
    };
    expect_error("[run]\nnumCV = 5\n", "[dataset]");
    expect_error("[dataset]\npath = x\n[method.1]\nname = BR\n[run]\nnumCV = 1\n", "numCV");
    expect_error("[dataset]\npath = x\n[run]\nnumCV = 5\n", "method.1");
    expect_error("[dataset]\npath = x\n[method.2]\nname = BR\n[run]\nnumCV = 5\n", "method");
    expect_error("[dataset]\npath = x\n[method.1]\nname = Bogus\n[run]\nnumCV = 5\n", "unknown method");
    expect_error("[dataset]\npath = x\n[method.1]\nname = BR\nrun]\n", "key = value");
    expect_error("key = 1\n", "outside");
}

TEST_CASE("parse_config: unknown keys and sections warn without failing") {
    std::vector<std::string> warnings;
    parse_config_text("[dataset]\npath = x\nzap = 1\n[method.1]\nname = BR\n"
                      "[run]\nnumCV = 3\n[extra]\nfoo = 1\n",
                      "test.ini", &warnings);
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].find("unknown dataset key 'zap'") != std::string::npos);
    CHECK(warnings[1].find("[extra]") != std::string::npos);
}

TEST_CASE("serialize/parse round trip reproduces the config exactly") {
    const ExperimentConfig original = parse_config_text(kSampleConfig);
    const ExperimentConfig reparsed = parse_config_text(serialize_config(original));
    CHECK(reparsed == original);
}

TEST_CASE("the report's config echo re-parses to an equal config") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.dataset_name = "toy";
    cfg.num_cv = 2;
    cfg.pipeline.stages = {{"PCA", {{"dim", "numF*0.5"}}}, {"BR", {}}};
    cfg.pipeline.base_params = {{"lambda", "0.25"}};
    cfg.pipeline.threshold = {"Rcut", "1"};
    cfg.pipeline.seed = 13;
    const ExperimentReport report = run_cv_experiment(cfg, toy_dataset(16, 3));
    const nlohmann::json j = report_to_json(report);
    const ExperimentConfig echoed = parse_config_text(j.at("config_echo").get<std::string>());
    CHECK(echoed == cfg);
}

TEST_CASE("run_cv_experiment: fold shapes and aggregate bookkeeping") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.num_cv = 5;
    cfg.pipeline.stages = {{"BR", {}}};
    cfg.pipeline.seed = 11;

    const ExperimentReport report = run_cv_experiment(cfg, toy_dataset(100, 4));
    REQUIRE(report.folds.size() == 5);
    for (const auto& fold : report.folds) CHECK(fold.metrics.n == 20);

    // mean/std recompute exactly from the per-fold values
    for (const auto& name : metric_names()) {
        double sum = 0.0;
        for (const auto& fold : report.folds) sum += fold.metrics.at(name);
        const double mean = sum / 5.0;
        double sq = 0.0;
        for (const auto& fold : report.folds) sq += (fold.metrics.at(name) - mean) * (fold.metrics.at(name) - mean);
        CHECK(report.mean.at(name) == mean);
        CHECK(report.stddev.at(name) == std::sqrt(sq / 4.0));
    }
}

TEST_CASE("run_cv_experiment: byte-identical reports across runs and thread counts") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.num_cv = 4;
    cfg.pipeline.stages = {{"PCA", {{"dim", "2"}}}, {"rCC", {}}};
    cfg.pipeline.base_name = "linear_svm";
    cfg.pipeline.seed = 3;

    const Dataset ds = toy_dataset(48, 9);
    set_num_threads(1);
    const ExperimentReport a = run_cv_experiment(cfg, ds);
    const ExperimentReport b = run_cv_experiment(cfg, ds);
    set_num_threads(8);
    const ExperimentReport c = run_cv_experiment(cfg, ds);
    set_num_threads(1);

    CHECK(report_to_csv(a) == report_to_csv(b));
    CHECK(report_to_csv(a) == report_to_csv(c));
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
    CHECK(report_to_json(a).dump() == report_to_json(c).dump());
}

TEST_CASE("run_cv_experiment: fold failures abort with the fold index") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.num_cv = 2;
    cfg.pipeline.stages = {{"RPC", {}}}; // needs >= 2 labels
    const Dataset one_label(FeatureMatrix::from_dense(synthetic::random_matrix(10, 2, 5)),
                            synthetic::random_labels(10, 1, 6, 0.5), "one");
    try {
        run_cv_experiment(cfg, one_label);
        FAIL("expected a fold failure");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("fold") != std::string::npos);
    }
}

TEST_CASE("run_cv_experiment: numCV beyond the row count is a config error") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.num_cv = 30;
    cfg.pipeline.stages = {{"BR", {}}};
    CHECK_THROWS_AS(run_cv_experiment(cfg, toy_dataset(10, 21)), ConfigError);
}

TEST_CASE("run_cv_experiment: Rcut quota is checked against the dataset") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.num_cv = 2;
    cfg.pipeline.stages = {{"BR", {}}};
    cfg.pipeline.threshold = {"Rcut", "7"};
    CHECK_THROWS_AS(run_cv_experiment(cfg, toy_dataset(20, 8)), ConfigError);
    cfg.pipeline.threshold = {"Rcut", "2"};
    CHECK_NOTHROW(run_cv_experiment(cfg, toy_dataset(20, 8)));
}

TEST_CASE("run_cv_experiment: tuned Scut and Pcut paths complete") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.num_cv = 3;
    cfg.pipeline.stages = {{"BR", {}}};
    cfg.pipeline.threshold = {"Scut", "tuned"};
    CHECK_NOTHROW(run_cv_experiment(cfg, toy_dataset(36, 10)));
    cfg.pipeline.threshold = {"Pcut", ""};
    CHECK_NOTHROW(run_cv_experiment(cfg, toy_dataset(36, 10)));
}

TEST_CASE("report files: written once, stable on disk") {
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.dataset_name = "toy";
    cfg.num_cv = 2;
    cfg.pipeline.stages = {{"BR", {}}};
    const ExperimentReport report = run_cv_experiment(cfg, toy_dataset(20, 12));

    const std::string prefix =
        (std::filesystem::temp_directory_path() / "mlc_report_test").string();
    write_report_files(report, prefix);
    write_report_files(report, prefix + "_again");

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        REQUIRE(in.good());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    CHECK(slurp(prefix + ".csv") == slurp(prefix + "_again.csv"));
    CHECK(slurp(prefix + ".json") == slurp(prefix + "_again.json"));
    CHECK(slurp(prefix + ".csv") == report_to_csv(report));
    for (const std::string suffix : {".csv", ".json", "_again.csv", "_again.json"})
        std::remove((prefix + suffix).c_str());
}

TEST_CASE("end-to-end: separable data drives BR+svm hamming loss to zero-ish") {
    const Dataset ds = synthetic::margin_hyperplane_dataset(120, 6, 3, 0.15, 99);
    ExperimentConfig cfg;
    cfg.dataset_path = "unused";
    cfg.num_cv = 4;
    cfg.pipeline.stages = {{"BR", {}}};
    cfg.pipeline.base_name = "linear_svm";
    cfg.pipeline.seed = 1;
    const ExperimentReport report = run_cv_experiment(cfg, ds);
    CHECK(report.mean.at("hamming_loss") <= 0.05);
}

TEST_CASE("list_methods_text names every built-in") {
    const std::string listing = list_methods_text();
    for (const std::string name :
         {"PCA", "CBMLC", "PLST", "BR", "CC", "rCC", "LP", "RAkEL", "RPC", "RSL"})
        CHECK(listing.find(name) != std::string::npos);
}
