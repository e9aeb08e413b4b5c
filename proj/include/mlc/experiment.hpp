#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlc/cross_validation.hpp"
#include "mlc/io/svmlight.hpp"
#include "mlc/metrics.hpp"
#include "mlc/pipeline.hpp"

namespace mlc {

// ---------------------------------------------------------------------------
// Experiment configuration (line-oriented key=value file with sections
// [dataset], [method.N], [base], [threshold], [run])
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string dataset_path;
    std::string dataset_name; // optional; defaults to the file stem
    int num_cv = 5;
    PipelineConfig pipeline;
    std::string output_prefix; // empty = console only

    std::uint64_t seed() const { return pipeline.seed; }

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const std::size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const std::size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

inline bool parse_u64(const std::string& raw, std::uint64_t& out) {
    auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
    return ec == std::errc() && p == raw.data() + raw.size();
}

} // namespace detail

inline ExperimentConfig parse_config_stream(std::istream& in, const std::string& source,
                                            std::vector<std::string>* warnings = nullptr) {
    auto warn = [&](const std::string& message) {
        if (warnings) warnings->push_back(message);
    };

    struct Entry {
        std::string key, value;
        int line;
    };
    std::map<std::string, std::vector<Entry>> sections;
    std::vector<std::string> section_order;

    std::string line;
    std::string current;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = detail::trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ConfigError(source + ":" + std::to_string(line_no) + ": unterminated section header");
            current = detail::trim(text.substr(1, text.size() - 2));
            if (current.empty())
                throw ConfigError(source + ":" + std::to_string(line_no) + ": empty section name");
            if (!sections.count(current)) section_order.push_back(current);
            sections[current]; // create
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
        if (current.empty())
            throw ConfigError(source + ":" + std::to_string(line_no) + ": key outside any [section]");
        sections[current].push_back(
            {detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)), line_no});
    }

    ExperimentConfig cfg;

    // [dataset]
    if (!sections.count("dataset")) throw ConfigError(source + ": missing [dataset] section");
    for (const auto& e : sections["dataset"]) {
        if (e.key == "path") cfg.dataset_path = e.value;
        else if (e.key == "name") cfg.dataset_name = e.value;
        else warn(source + ":" + std::to_string(e.line) + ": unknown dataset key '" + e.key + "'");
    }
    if (cfg.dataset_path.empty()) throw ConfigError(source + ": [dataset] requires a 'path' key");

    // [method.N], consecutive from 1
    for (int index = 1;; ++index) {
        const std::string name = "method." + std::to_string(index);
        if (!sections.count(name)) break;
        StageSpec stage;
        for (const auto& e : sections[name]) {
            if (e.key == "name") stage.name = e.value;
            else stage.params[e.key] = e.value;
        }
        if (stage.name.empty())
            throw ConfigError(source + ": [" + name + "] requires a 'name' key");
        cfg.pipeline.stages.push_back(std::move(stage));
    }
    if (cfg.pipeline.stages.empty())
        throw ConfigError(source + ": configure at least one [method.1] section");
    for (const auto& section : section_order)
        if (section.rfind("method.", 0) == 0) {
            std::uint64_t index = 0;
            const std::string suffix = section.substr(7);
            const bool in_sequence = detail::parse_u64(suffix, index) && index >= 1 &&
                                     index <= cfg.pipeline.stages.size() &&
                                     section == "method." + std::to_string(index);
            if (!in_sequence)
                throw ConfigError(source + ": section [" + section +
                                  "] is out of sequence (method sections must be consecutive from 1)");
        }

    // [base]
    if (sections.count("base")) {
        bool have_name = false;
        for (const auto& e : sections["base"]) {
            if (e.key == "name") {
                cfg.pipeline.base_name = e.value;
                have_name = true;
            } else {
                cfg.pipeline.base_params[e.key] = e.value;
            }
        }
        if (!have_name) throw ConfigError(source + ": [base] requires a 'name' key");
    }

    // [threshold]
    if (sections.count("threshold")) {
        for (const auto& e : sections["threshold"]) {
            if (e.key == "type") cfg.pipeline.threshold.type = e.value;
            else if (e.key == "param") cfg.pipeline.threshold.param = e.value;
            else warn(source + ":" + std::to_string(e.line) + ": unknown threshold key '" + e.key + "'");
        }
    }

    // [run]
    if (!sections.count("run")) throw ConfigError(source + ": missing [run] section");
    bool have_num_cv = false;
    for (const auto& e : sections["run"]) {
        if (e.key == "numCV") {
            int value = 0;
            auto [p, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), value);
            if (ec != std::errc() || p != e.value.data() + e.value.size() || value < 2)
                throw ConfigError(source + ":" + std::to_string(e.line) + ": numCV must be an integer >= 2");
            cfg.num_cv = value;
            have_num_cv = true;
        } else if (e.key == "seed") {
            std::uint64_t value = 0;
            if (!detail::parse_u64(e.value, value))
                throw ConfigError(source + ":" + std::to_string(e.line) + ": seed must be a non-negative integer");
            cfg.pipeline.seed = value;
        } else if (e.key == "output") {
            cfg.output_prefix = e.value;
        } else {
            warn(source + ":" + std::to_string(e.line) + ": unknown run key '" + e.key + "'");
        }
    }
    if (!have_num_cv) throw ConfigError(source + ": [run] requires a 'numCV' key");

    for (const auto& section : section_order) {
        if (section == "dataset" || section == "base" || section == "threshold" || section == "run")
            continue;
        if (section.rfind("method.", 0) == 0) continue;
        warn(source + ": unknown section [" + section + "]");
    }

    const ValidationReport validation = validate_config(cfg.pipeline);
    if (!validation.valid())
        throw ConfigError(source + ": invalid pipeline:\n" + validation.to_string());
    return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text, const std::string& source = "config",
                                          std::vector<std::string>* warnings = nullptr) {
    std::istringstream in(text);
    return parse_config_stream(in, source, warnings);
}

inline ExperimentConfig parse_config(const std::string& path,
                                     std::vector<std::string>* warnings = nullptr) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse_config_stream(in, path, warnings);
}

/// Canonical config serialization; parse_config_text(serialize_config(c)) == c.
inline std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "[dataset]\n";
    out << "path = " << cfg.dataset_path << "\n";
    if (!cfg.dataset_name.empty()) out << "name = " << cfg.dataset_name << "\n";
    for (std::size_t i = 0; i < cfg.pipeline.stages.size(); ++i) {
        const StageSpec& stage = cfg.pipeline.stages[i];
        out << "\n[method." << (i + 1) << "]\n";
        out << "name = " << stage.name << "\n";
        for (const auto& [key, value] : stage.params) out << key << " = " << value << "\n";
    }
    out << "\n[base]\n";
    out << "name = " << cfg.pipeline.base_name << "\n";
    for (const auto& [key, value] : cfg.pipeline.base_params) out << key << " = " << value << "\n";
    out << "\n[threshold]\n";
    out << "type = " << cfg.pipeline.threshold.type << "\n";
    out << "param = " << cfg.pipeline.threshold.param << "\n";
    out << "\n[run]\n";
    out << "numCV = " << cfg.num_cv << "\n";
    out << "seed = " << cfg.pipeline.seed << "\n";
    if (!cfg.output_prefix.empty()) out << "output = " << cfg.output_prefix << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Cross-validation experiment runner
// ---------------------------------------------------------------------------

struct FoldResult {
    int fold = 0;
    std::uint64_t fold_seed = 0;
    MetricReport metrics;
    std::string structure;  // fitted tree with resolved parameters
    double seconds = 0.0;   // console display only, never written to report files
};

struct ExperimentReport {
    ExperimentConfig config;
    StatsRecord data_stats;
    std::vector<FoldResult> folds;
    std::map<std::string, double> mean;
    std::map<std::string, double> stddev; // sample standard deviation across folds
};

namespace detail {

inline std::string describe_node(const TreeNode& node) {
    switch (node.kind) {
        case MethodKind::transformer: {
            const std::string args = node.transformer->describe();
            return node.spec.name + (args.empty() ? "" : "(" + args + ")") + " -> " +
                   describe_node(*node.child);
        }
        case MethodKind::partitioner: {
            const std::string args = node.partitioner->describe();
            std::string out = node.spec.name + (args.empty() ? "" : "(" + args + ")") + " -> [";
            for (std::size_t c = 0; c < node.children.size(); ++c) {
                if (c) out += ", ";
                out += describe_node(*node.children[c]);
            }
            return out + "]";
        }
        case MethodKind::terminal:
            return node.constant_fallback ? "Constant" : node.spec.name;
    }
    return "?";
}

inline PredictionMatrix apply_threshold(const ThresholdSpec& spec, const ScoreMatrix& scores,
                                        const LabelMatrix& train_labels,
                                        const std::vector<double>* tuned) {
    if (spec.type == "Scut") {
        if (spec.scut_tuned()) {
            if (!tuned) throw std::logic_error("tuned Scut thresholds were not prepared");
            return apply_scut(scores, *tuned);
        }
        return apply_scut(scores, spec.scut_threshold());
    }
    if (spec.type == "Rcut") return apply_rcut(scores, spec.rcut_k());
    if (spec.type == "Pcut") return apply_pcut(scores, train_labels.positive_priors());
    throw ConfigError("unknown threshold type '" + spec.type + "'");
}

} // namespace detail

/// Runs numCV-fold cross-validation of the configured pipeline on a loaded
/// dataset. All fitted state (transformers included) lives inside each fold;
/// the test fold only ever reaches predict. Bitwise-deterministic for a given
/// seed at any thread count.
inline ExperimentReport run_cv_experiment(const ExperimentConfig& cfg, const Dataset& ds) {
    const ValidationReport validation = validate_config(cfg.pipeline);
    if (!validation.valid()) throw ConfigError("invalid pipeline:\n" + validation.to_string());
    if (cfg.pipeline.threshold.type == "Rcut" && cfg.pipeline.threshold.rcut_k() > ds.num_labels())
        throw ConfigError("Rcut k exceeds the dataset's label count");
    if (cfg.num_cv > ds.rows())
        throw ConfigError("numCV = " + std::to_string(cfg.num_cv) + " exceeds the dataset's " +
                          std::to_string(ds.rows()) + " rows");

    ExperimentReport report;
    report.config = cfg;
    report.data_stats = dataset_stats(ds);

    const CVSplit split = kfold_split(ds.rows(), cfg.num_cv, derive_seed(cfg.seed(), seed_tag::cv_split));
    report.folds.resize(static_cast<std::size_t>(cfg.num_cv));

    detail::parallel_for(cfg.num_cv, [&](int f) {
        const auto started = std::chrono::steady_clock::now();
        try {
            const std::vector<int> train_rows = split.train_indices(f);
            const std::vector<int>& test_rows = split.test_indices(f);
            const Dataset train = ds.subset(train_rows);
            const Dataset test = ds.subset(test_rows);

            PipelineConfig fold_cfg = cfg.pipeline;
            fold_cfg.seed = derive_seed(cfg.seed(), seed_tag::fold, static_cast<std::uint64_t>(f));

            std::vector<double> tuned;
            const bool needs_tuning =
                fold_cfg.threshold.type == "Scut" && fold_cfg.threshold.scut_tuned();
            if (needs_tuning) {
                // inner 75/25 holdout for threshold tuning, then refit on the
                // full training fold
                const int n_train = train.rows();
                if (n_train >= 8) {
                    std::vector<int> rows(static_cast<std::size_t>(n_train));
                    std::iota(rows.begin(), rows.end(), 0);
                    Rng rng(derive_seed(fold_cfg.seed, seed_tag::scut_tune));
                    rng.shuffle(rows);
                    const int holdout = std::max(1, n_train / 4);
                    std::vector<int> val_rows(rows.begin(), rows.begin() + holdout);
                    std::vector<int> fit_rows(rows.begin() + holdout, rows.end());
                    std::sort(val_rows.begin(), val_rows.end());
                    std::sort(fit_rows.begin(), fit_rows.end());
                    const ProblemTree inner = fit_pipeline(fold_cfg, train.subset(fit_rows));
                    const Dataset val = train.subset(val_rows);
                    tuned = tune_scut(inner.predict(val.features()), val.labels());
                } else {
                    const ProblemTree inner = fit_pipeline(fold_cfg, train);
                    tuned = tune_scut(inner.predict(train.features()), train.labels());
                }
            }

            const ProblemTree tree = fit_pipeline(fold_cfg, train);
            const ScoreMatrix scores = tree.predict(test.features());
            const PredictionMatrix predictions = detail::apply_threshold(
                fold_cfg.threshold, scores, train.labels(), needs_tuning ? &tuned : nullptr);

            FoldResult& result = report.folds[static_cast<std::size_t>(f)];
            result.fold = f;
            result.fold_seed = fold_cfg.seed;
            result.metrics = compute_all_metrics(test.labels(), predictions, scores);
            result.structure = detail::describe_node(tree.root());
        } catch (const std::exception& e) {
            throw std::runtime_error("fold " + std::to_string(f) + " failed: " + e.what());
        }
        report.folds[static_cast<std::size_t>(f)].seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    });

    for (const std::string& name : metric_names()) {
        double sum = 0.0;
        for (const auto& fold : report.folds) sum += fold.metrics.at(name);
        const double mean = sum / static_cast<double>(cfg.num_cv);
        double sq = 0.0;
        for (const auto& fold : report.folds) {
            const double d = fold.metrics.at(name) - mean;
            sq += d * d;
        }
        report.mean[name] = mean;
        report.stddev[name] = std::sqrt(sq / static_cast<double>(cfg.num_cv - 1));
    }
    return report;
}

inline ExperimentReport run_cv_experiment(const ExperimentConfig& cfg) {
    return run_cv_experiment(cfg, load_svmlight_multilabel(cfg.dataset_path));
}

// ---------------------------------------------------------------------------
// Report output
// ---------------------------------------------------------------------------

namespace detail {
inline std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}
} // namespace detail

inline std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "fold";
    for (const auto& name : metric_names()) out << "," << name;
    out << "\n";
    for (const auto& fold : report.folds) {
        out << fold.fold;
        for (const auto& name : metric_names()) out << "," << detail::format_full(fold.metrics.at(name));
        out << "\n";
    }
    out << "mean";
    for (const auto& name : metric_names()) out << "," << detail::format_full(report.mean.at(name));
    out << "\nstd";
    for (const auto& name : metric_names()) out << "," << detail::format_full(report.stddev.at(name));
    out << "\n";
    return out.str();
}

inline nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["config_echo"] = serialize_config(report.config);
    j["dataset"] = {{"name", report.config.dataset_name.empty()
                                 ? std::filesystem::path(report.config.dataset_path).stem().string()
                                 : report.config.dataset_name},
                    {"n", report.data_stats.n},
                    {"numF", report.data_stats.num_features},
                    {"numL", report.data_stats.num_labels},
                    {"cardinality", report.data_stats.cardinality},
                    {"density", report.data_stats.density},
                    {"distinct_labelsets", report.data_stats.distinct_labelsets}};
    j["numCV"] = report.config.num_cv;
    j["seed"] = report.config.seed();
    nlohmann::json folds = nlohmann::json::array();
    for (const auto& fold : report.folds) {
        nlohmann::json fj;
        fj["fold"] = fold.fold;
        fj["seed"] = fold.fold_seed;
        fj["structure"] = fold.structure;
        for (const auto& name : metric_names()) fj["metrics"][name] = fold.metrics.at(name);
        folds.push_back(std::move(fj));
    }
    j["folds"] = std::move(folds);
    for (const auto& name : metric_names()) {
        j["aggregate"][name]["mean"] = report.mean.at(name);
        j["aggregate"][name]["std"] = report.stddev.at(name);
    }
    if (!report.folds.empty())
        j["conventions"] = report.folds.front().metrics.conventions;
    return j;
}

/// Writes <prefix>.csv and <prefix>.json. Both files are byte-identical across
/// reruns with the same seed, at any thread count.
inline void write_report_files(const ExperimentReport& report, const std::string& prefix) {
    const std::filesystem::path base(prefix);
    if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
    {
        std::ofstream out(prefix + ".csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report file: " + prefix + ".csv");
        out << report_to_csv(report);
    }
    {
        std::ofstream out(prefix + ".json", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report file: " + prefix + ".json");
        out << report_to_json(report).dump(2) << "\n";
    }
}

/// Human-readable per-fold table with wall-clock timing (console only).
inline void print_report(const ExperimentReport& report, std::ostream& out) {
    out << "dataset: "
        << (report.config.dataset_name.empty()
                ? std::filesystem::path(report.config.dataset_path).stem().string()
                : report.config.dataset_name)
        << "  (n=" << report.data_stats.n << ", numF=" << report.data_stats.num_features
        << ", numL=" << report.data_stats.num_labels << ")\n";
    if (!report.folds.empty()) out << "pipeline: " << report.folds.front().structure << "\n";

    out << std::left << std::setw(6) << "fold";
    for (const auto& name : metric_names()) out << std::right << std::setw(19) << name;
    out << std::right << std::setw(12) << "seconds" << "\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& fold : report.folds) {
        out << std::left << std::setw(6) << fold.fold;
        for (const auto& name : metric_names())
            out << std::right << std::setw(19) << fold.metrics.at(name);
        out << std::right << std::setw(12) << std::setprecision(2) << fold.seconds
            << std::setprecision(4) << "\n";
    }
    out << std::left << std::setw(6) << "mean";
    for (const auto& name : metric_names()) out << std::right << std::setw(19) << report.mean.at(name);
    out << "\n" << std::left << std::setw(6) << "std";
    for (const auto& name : metric_names()) out << std::right << std::setw(19) << report.stddev.at(name);
    out << "\n";
    out.unsetf(std::ios::fixed);
}

/// Registry listing for the `list-methods` command.
inline std::string list_methods_text() {
    std::ostringstream out;
    for (const MethodInfo* info : MethodRegistry::instance().list()) {
        out << info->name << "  [" << to_string(info->kind) << "]";
        if (info->regression_capable) out << "  (regression-capable)";
        out << "\n";
        for (const auto& p : info->params) {
            out << "    " << p.name << " : "
                << (p.kind == ParamKind::number ? "number"
                    : p.kind == ParamKind::expression ? "expression"
                                                      : "string");
            if (p.required) out << ", required";
            else if (!p.default_value.empty()) out << ", default=" << p.default_value;
            if (!p.description.empty()) out << "  : " << p.description;
            out << "\n";
        }
    }
    return out.str();
}

} // namespace mlc
