#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlc/base/base_learner.hpp"
#include "mlc/core/error.hpp"
#include "mlc/core/parallel.hpp"
#include "mlc/core/rng.hpp"
#include "mlc/dataset.hpp"
#include "mlc/problem.hpp"
#include "mlc/reducers/dim_expr.hpp"
#include "mlc/reducers/kmeans.hpp"
#include "mlc/reducers/pca.hpp"
#include "mlc/reducers/plst.hpp"
#include "mlc/strategies/br.hpp"
#include "mlc/strategies/cc.hpp"
#include "mlc/strategies/lp.hpp"
#include "mlc/strategies/rakel.hpp"
#include "mlc/strategies/rpc.hpp"
#include "mlc/strategies/rsl.hpp"
#include "mlc/strategies/terminal.hpp"
#include "mlc/thresholding.hpp"

namespace mlc {

// ---------------------------------------------------------------------------
// Configuration types
// ---------------------------------------------------------------------------

/// One pipeline stage: a registered method name plus raw parameter strings
/// (numbers and dimension expressions are resolved against the sub-problem at
/// fit time).
struct StageSpec {
    std::string name;
    std::map<std::string, std::string> params;

    std::string param_or(const std::string& key, const std::string& fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }

    friend bool operator==(const StageSpec&, const StageSpec&) = default;
};

struct ThresholdSpec {
    std::string type = "Scut"; // Scut | Rcut | Pcut
    std::string param = "0.5";

    bool scut_tuned() const { return param == "tuned"; }

    double scut_threshold() const {
        double value = 0.0;
        auto [p, ec] = std::from_chars(param.data(), param.data() + param.size(), value);
        if (ec != std::errc() || p != param.data() + param.size())
            throw ConfigError("Scut param must be a number in [0,1] or 'tuned', got '" + param + "'");
        return value;
    }

    int rcut_k() const {
        int value = 0;
        auto [p, ec] = std::from_chars(param.data(), param.data() + param.size(), value);
        if (ec != std::errc() || p != param.data() + param.size())
            throw ConfigError("Rcut param must be an integer >= 1, got '" + param + "'");
        return value;
    }

    void validate() const {
        if (type == "Scut") {
            if (scut_tuned()) return;
            const double t = scut_threshold();
            if (t < 0.0 || t > 1.0) throw ConfigError("Scut threshold must lie in [0,1]");
        } else if (type == "Rcut") {
            if (rcut_k() < 1) throw ConfigError("Rcut k must be >= 1");
        } else if (type == "Pcut") {
            // param unused: priors come from the training fold
        } else {
            throw ConfigError("unknown threshold type '" + type + "' (available: Scut, Rcut, Pcut)");
        }
    }

    friend bool operator==(const ThresholdSpec&, const ThresholdSpec&) = default;
};

struct PipelineConfig {
    std::vector<StageSpec> stages;
    std::string base_name = "ridge";
    std::map<std::string, std::string> base_params;
    ThresholdSpec threshold;
    std::uint64_t seed = 0;

    BinaryLearnerSpec base_spec() const { return BinaryLearnerSpec::from_params(base_name, base_params); }

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

// ---------------------------------------------------------------------------
// Method registry (the plugin surface: train + test + parameter schema)
// ---------------------------------------------------------------------------

enum class MethodKind { transformer, partitioner, terminal };

inline const char* to_string(MethodKind kind) {
    switch (kind) {
        case MethodKind::transformer: return "transformer";
        case MethodKind::partitioner: return "partitioner";
        case MethodKind::terminal: return "terminal";
    }
    return "?";
}

enum class ParamKind { number, expression, string };

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::number;
    bool required = false;
    std::string default_value;
    std::string description;
};

/// A fitted MLC-to-MLC stage that rewrites the problem (one child).
class TransformerModel {
public:
    virtual ~TransformerModel() = default;
    virtual FeatureMatrix transform_features(const FeatureMatrix& x) const { return x; }
    virtual Targets transform_targets(const Targets& t) const { return t; }
    /// Invoked on the way up; label-space reducers decode back to their input
    /// label space here.
    virtual Eigen::MatrixXd decode_scores(Eigen::MatrixXd scores) const { return scores; }
    /// Resolved-parameter echo for reports, e.g. "dim=5".
    virtual std::string describe() const { return ""; }
};

/// A fitted stage that splits the problem into m disjoint row groups.
class PartitionerModel {
public:
    virtual ~PartitionerModel() = default;
    virtual int num_children() const = 0;
    virtual std::vector<int> route(const FeatureMatrix& x) const = 0;
    virtual const std::vector<int>& train_assignment() const = 0;
    virtual std::string describe() const { return ""; }
};

struct MethodInfo {
    std::string name;
    MethodKind kind = MethodKind::terminal;
    std::vector<ParamSpec> params;
    bool produces_real_targets = false; // label-space reducers
    bool regression_capable = false;    // terminals that accept real targets

    std::function<std::unique_ptr<TransformerModel>(const StageSpec&, const Problem&, std::uint64_t)>
        fit_transformer;
    std::function<std::unique_ptr<PartitionerModel>(const StageSpec&, const Problem&, std::uint64_t)>
        fit_partitioner;
    std::function<std::unique_ptr<TerminalModel>(const StageSpec&, const Problem&,
                                                 const BinaryLearnerSpec&, std::uint64_t)>
        fit_terminal;
    /// Optional syntax checks beyond the generic schema pass.
    std::function<void(const StageSpec&, std::vector<std::string>&)> extra_validate;
};

namespace detail {
inline StatsRecord problem_stats(const Problem& problem) {
    StatsRecord stats;
    stats.n = problem.rows();
    stats.num_features = problem.features.cols();
    stats.num_labels = problem.targets.cols();
    return stats;
}
} // namespace detail

class MethodRegistry {
public:
    static MethodRegistry& instance() {
        static MethodRegistry registry;
        return registry;
    }

    /// Registers a method; a duplicate name is an error.
    void register_method(MethodInfo info) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (index_.count(info.name))
            throw std::invalid_argument("method '" + info.name + "' is already registered");
        index_[info.name] = methods_.size();
        methods_.push_back(std::move(info));
    }

    bool contains(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        return index_.count(name) > 0;
    }

    const MethodInfo& get(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown method '" + name + "'");
        return methods_[it->second];
    }

    /// Registration order (built-ins first).
    std::vector<const MethodInfo*> list() const {
        std::lock_guard<std::mutex> lock(mutex_);
        std::vector<const MethodInfo*> out;
        out.reserve(methods_.size());
        for (const auto& m : methods_) out.push_back(&m);
        return out;
    }

private:
    MethodRegistry();

    mutable std::mutex mutex_;
    std::vector<MethodInfo> methods_;
    std::map<std::string, std::size_t> index_;
};

inline void register_method(MethodInfo info) { MethodRegistry::instance().register_method(std::move(info)); }

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
    std::string where;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool valid() const { return issues.empty(); }

    std::string to_string() const {
        std::string out;
        for (const auto& issue : issues) out += issue.where + ": " + issue.message + "\n";
        return out;
    }
};

inline ValidationReport validate_config(const PipelineConfig& cfg) {
    ValidationReport report;
    auto add = [&](const std::string& where, const std::string& message) {
        report.issues.push_back({where, message});
    };

    const auto& registry = MethodRegistry::instance();
    if (cfg.stages.empty()) add("pipeline", "empty pipeline: configure at least one terminal strategy");

    bool saw_real_targets = false;
    for (std::size_t i = 0; i < cfg.stages.size(); ++i) {
        const StageSpec& stage = cfg.stages[i];
        const std::string where = "stage " + std::to_string(i + 1) + " (" + stage.name + ")";
        if (!registry.contains(stage.name)) {
            add(where, "unknown method '" + stage.name + "'");
            continue;
        }
        const MethodInfo& info = registry.get(stage.name);
        const bool is_last = i + 1 == cfg.stages.size();
        if (info.kind == MethodKind::terminal && !is_last)
            add(where, "terminal strategy not last in the pipeline");
        if (info.kind != MethodKind::terminal && is_last)
            add(where, "pipeline must end with a terminal strategy, '" + stage.name + "' is a " +
                           std::string(to_string(info.kind)));

        for (const auto& [key, value] : stage.params) {
            const ParamSpec* spec = nullptr;
            for (const auto& p : info.params)
                if (p.name == key) spec = &p;
            if (!spec) {
                add(where, "unknown parameter '" + key + "'");
                continue;
            }
            try {
                if (spec->kind == ParamKind::number) {
                    double parsed = 0.0;
                    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
                    if (ec != std::errc() || p != value.data() + value.size())
                        throw ConfigError("'" + value + "' is not a number");
                } else if (spec->kind == ParamKind::expression) {
                    check_dim_expr(value);
                }
            } catch (const ConfigError& e) {
                add(where, "parameter '" + key + "': " + e.what());
            }
        }
        for (const auto& p : info.params)
            if (p.required && !stage.params.count(p.name))
                add(where, "missing required parameter '" + p.name + "'");
        if (info.extra_validate) {
            std::vector<std::string> messages;
            info.extra_validate(stage, messages);
            for (auto& m : messages) add(where, m);
        }

        if (info.produces_real_targets) saw_real_targets = true;
        if (is_last && info.kind == MethodKind::terminal && saw_real_targets &&
            !info.regression_capable)
            add(where, "terminal strategy is not regression-capable but a label-space reduction "
                       "stage produces real-valued targets (use BR with the ridge base)");
    }

    try {
        const BinaryLearnerSpec base = cfg.base_spec();
        if (saw_real_targets && !base.regression_capable())
            add("base", "label-space reduction requires the regression-capable ridge base learner");
    } catch (const ConfigError& e) {
        add("base", e.what());
    }
    try {
        cfg.threshold.validate();
    } catch (const ConfigError& e) {
        add("threshold", e.what());
    }
    return report;
}

// ---------------------------------------------------------------------------
// Problem tree
// ---------------------------------------------------------------------------

struct TreeNode {
    StageSpec spec; // echo of the stage that built this node
    MethodKind kind = MethodKind::terminal;
    bool constant_fallback = false; // zero-row sub-problem leaf

    std::unique_ptr<TransformerModel> transformer;
    std::unique_ptr<TreeNode> child;

    std::unique_ptr<PartitionerModel> partitioner;
    std::vector<std::unique_ptr<TreeNode>> children;

    std::unique_ptr<TerminalModel> terminal;
};

namespace detail {

inline std::unique_ptr<TreeNode> fit_node(const std::vector<StageSpec>& stages, std::size_t index,
                                          Problem problem, std::uint64_t seed,
                                          const BinaryLearnerSpec& base,
                                          const Eigen::RowVectorXd& parent_prior) {
    auto node = std::make_unique<TreeNode>();
    if (problem.rows() == 0) {
        // zero-row sub-problem: constant leaf emitting the parent's priors
        node->kind = MethodKind::terminal;
        node->constant_fallback = true;
        node->spec.name = "Constant";
        node->terminal = std::make_unique<ConstantModel>(parent_prior);
        return node;
    }

    const StageSpec& stage = stages[index];
    const MethodInfo& info = MethodRegistry::instance().get(stage.name);
    node->spec = stage;
    node->kind = info.kind;

    switch (info.kind) {
        case MethodKind::transformer: {
            node->transformer = info.fit_transformer(stage, problem, seed);
            Problem child_problem(node->transformer->transform_features(problem.features),
                                  node->transformer->transform_targets(problem.targets));
            const Eigen::RowVectorXd prior = child_problem.targets.column_means();
            node->child = fit_node(stages, index + 1, std::move(child_problem),
                                   derive_seed(seed, 0), base, prior);
            break;
        }
        case MethodKind::partitioner: {
            node->partitioner = info.fit_partitioner(stage, problem, seed);
            const int m = node->partitioner->num_children();
            const std::vector<int>& assignment = node->partitioner->train_assignment();
            std::vector<std::vector<int>> groups(static_cast<std::size_t>(m));
            for (int i = 0; i < problem.rows(); ++i)
                groups[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].push_back(i);
            const Eigen::RowVectorXd prior = problem.targets.column_means();
            node->children.resize(static_cast<std::size_t>(m));
            detail::parallel_for(m, [&](int c) {
                node->children[static_cast<std::size_t>(c)] =
                    fit_node(stages, index + 1, problem.subset(groups[static_cast<std::size_t>(c)]),
                             derive_seed(seed, static_cast<std::uint64_t>(c)), base, prior);
            });
            break;
        }
        case MethodKind::terminal: {
            node->terminal = info.fit_terminal(stage, problem, base, seed);
            break;
        }
    }
    return node;
}

inline Eigen::MatrixXd predict_node(const TreeNode& node, const FeatureMatrix& x) {
    switch (node.kind) {
        case MethodKind::terminal:
            return node.terminal->predict(x);
        case MethodKind::transformer:
            return node.transformer->decode_scores(
                predict_node(*node.child, node.transformer->transform_features(x)));
        case MethodKind::partitioner: {
            const std::vector<int> assignment = node.partitioner->route(x);
            const int m = node.partitioner->num_children();
            std::vector<std::vector<int>> groups(static_cast<std::size_t>(m));
            for (int i = 0; i < x.rows(); ++i)
                groups[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].push_back(i);
            std::vector<Eigen::MatrixXd> partial(static_cast<std::size_t>(m));
            detail::parallel_for(m, [&](int c) {
                partial[static_cast<std::size_t>(c)] = predict_node(
                    *node.children[static_cast<std::size_t>(c)], x.subset(groups[static_cast<std::size_t>(c)]));
            });
            Eigen::MatrixXd out(x.rows(), partial.empty() ? 0 : partial[0].cols());
            for (int c = 0; c < m; ++c) {
                const auto& rows = groups[static_cast<std::size_t>(c)];
                for (std::size_t r = 0; r < rows.size(); ++r)
                    out.row(rows[r]) = partial[static_cast<std::size_t>(c)].row(static_cast<Eigen::Index>(r));
            }
            return out;
        }
    }
    throw std::logic_error("predict_node: unreachable");
}

} // namespace detail

/// A fitted pipeline: a recursive tree of transformer / partitioner / terminal
/// nodes. predict emits n x L_original scores in [0,1], rows aligned with the
/// input.
class ProblemTree {
public:
    ScoreMatrix predict(const FeatureMatrix& x) const {
        if (x.cols() != input_dim_)
            throw std::invalid_argument("ProblemTree::predict: expected " + std::to_string(input_dim_) +
                                        " feature columns, got " + std::to_string(x.cols()));
        return detail::predict_node(*root_, x);
    }

    int input_dim() const { return input_dim_; }
    int output_labels() const { return output_labels_; }
    const TreeNode& root() const { return *root_; }
    std::uint64_t seed() const { return seed_; }

    friend ProblemTree fit_pipeline(const PipelineConfig&, const Dataset&);

private:
    std::unique_ptr<TreeNode> root_;
    int input_dim_ = 0;
    int output_labels_ = 0;
    std::uint64_t seed_ = 0;
};

/// Fits the configured stage chain on the training data. The root node seed is
/// cfg.seed and each child derives its own from (parent seed, child index), so
/// concurrent fitting cannot change results.
inline ProblemTree fit_pipeline(const PipelineConfig& cfg, const Dataset& train) {
    const ValidationReport report = validate_config(cfg);
    if (!report.valid()) throw ConfigError("invalid pipeline config:\n" + report.to_string());
    if (train.rows() == 0) throw std::invalid_argument("fit_pipeline: empty training set");

    ProblemTree tree;
    tree.input_dim_ = train.num_features();
    tree.output_labels_ = train.num_labels();
    tree.seed_ = cfg.seed;
    Problem problem = Problem::from_dataset(train);
    const Eigen::RowVectorXd prior = problem.targets.column_means();
    tree.root_ = detail::fit_node(cfg.stages, 0, std::move(problem), cfg.seed, cfg.base_spec(), prior);
    return tree;
}

// ---------------------------------------------------------------------------
// Built-in methods
// ---------------------------------------------------------------------------

namespace detail {

class PcaTransformer final : public TransformerModel {
public:
    explicit PcaTransformer(PcaState state) : state_(std::move(state)) {}
    FeatureMatrix transform_features(const FeatureMatrix& x) const override {
        return pca_transform(state_, x);
    }
    std::string describe() const override { return "dim=" + std::to_string(state_.output_dim()); }
    const PcaState& state() const { return state_; }

private:
    PcaState state_;
};

class PlstTransformer final : public TransformerModel {
public:
    explicit PlstTransformer(PlstState state) : state_(std::move(state)) {}
    Targets transform_targets(const Targets& t) const override {
        return Targets::real(plst_encode(state_, t));
    }
    Eigen::MatrixXd decode_scores(Eigen::MatrixXd scores) const override {
        return plst_decode(state_, scores);
    }
    std::string describe() const override { return "dim=" + std::to_string(state_.reduced_dim()); }
    const PlstState& state() const { return state_; }

private:
    PlstState state_;
};

class KmeansPartitioner final : public PartitionerModel {
public:
    explicit KmeansPartitioner(KmeansState state) : state_(std::move(state)) {}
    int num_children() const override { return state_.clusters; }
    std::vector<int> route(const FeatureMatrix& x) const override { return kmeans_assign(state_, x); }
    const std::vector<int>& train_assignment() const override { return state_.train_assignment; }
    std::string describe() const override { return "k=" + std::to_string(state_.clusters); }
    const KmeansState& state() const { return state_; }

private:
    KmeansState state_;
};

inline std::vector<int> parse_order_param(const std::string& raw) {
    std::vector<int> order;
    std::size_t pos = 0;
    while (pos <= raw.size()) {
        std::size_t comma = raw.find(',', pos);
        if (comma == std::string::npos) comma = raw.size();
        const std::string piece = raw.substr(pos, comma - pos);
        int value = 0;
        auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (ec != std::errc() || p != piece.data() + piece.size() || value < 0)
            throw ConfigError("bad chain order entry '" + piece + "'");
        order.push_back(value);
        if (comma == raw.size()) break;
        pos = comma + 1;
    }
    return order;
}

inline void require_binary_targets(const Problem& problem, const char* strategy) {
    if (!problem.targets.is_binary())
        throw ConfigError(std::string(strategy) +
                          " cannot train on real-valued targets (only BR with ridge can follow PLST)");
}

} // namespace detail

inline MethodRegistry::MethodRegistry() {
    auto add = [this](MethodInfo info) {
        index_[info.name] = methods_.size();
        methods_.push_back(std::move(info));
    };

    {
        MethodInfo pca;
        pca.name = "PCA";
        pca.kind = MethodKind::transformer;
        pca.params = {{"dim", ParamKind::expression, true, "",
                       "target feature dimension; integer or expression over numF/numL/n"}};
        pca.fit_transformer = [](const StageSpec& spec, const Problem& problem, std::uint64_t seed) {
            const StatsRecord stats = detail::problem_stats(problem);
            const int cap = std::min(stats.n, stats.num_features);
            const int k = resolve_dim(spec.param_or("dim", ""), stats, cap);
            return std::make_unique<detail::PcaTransformer>(pca_fit(problem.features, k, {}, seed));
        };
        add(std::move(pca));
    }
    {
        MethodInfo cbmlc;
        cbmlc.name = "CBMLC";
        cbmlc.kind = MethodKind::partitioner;
        cbmlc.params = {{"k", ParamKind::expression, true, "", "number of clusters"},
                        {"maxIter", ParamKind::number, false, "100", "Lloyd iteration cap"},
                        {"tol", ParamKind::number, false, "1e-6", "centroid movement tolerance"}};
        cbmlc.fit_partitioner = [](const StageSpec& spec, const Problem& problem, std::uint64_t seed) {
            const StatsRecord stats = detail::problem_stats(problem);
            const int m = resolve_dim(spec.param_or("k", ""), stats, stats.n);
            const int max_iter = static_cast<int>(std::stod(spec.param_or("maxIter", "100")));
            const double tol = std::stod(spec.param_or("tol", "1e-6"));
            return std::make_unique<detail::KmeansPartitioner>(
                kmeans_fit(problem.features, m, derive_seed(seed, seed_tag::kmeans), max_iter, tol));
        };
        add(std::move(cbmlc));
    }
    {
        MethodInfo plst;
        plst.name = "PLST";
        plst.kind = MethodKind::transformer;
        plst.produces_real_targets = true;
        plst.params = {{"dim", ParamKind::expression, true, "",
                        "reduced label dimension; integer or expression over numF/numL/n"}};
        plst.fit_transformer = [](const StageSpec& spec, const Problem& problem, std::uint64_t seed) {
            const StatsRecord stats = detail::problem_stats(problem);
            const int cap = std::min(stats.n, stats.num_labels);
            const int k = resolve_dim(spec.param_or("dim", ""), stats, cap);
            return std::make_unique<detail::PlstTransformer>(plst_fit(problem.targets, k, {}, seed));
        };
        add(std::move(plst));
    }
    {
        MethodInfo br;
        br.name = "BR";
        br.kind = MethodKind::terminal;
        br.regression_capable = true;
        br.fit_terminal = [](const StageSpec&, const Problem& problem, const BinaryLearnerSpec& base,
                             std::uint64_t seed) -> std::unique_ptr<TerminalModel> {
            return br_fit(problem.features, problem.targets, base, seed);
        };
        add(std::move(br));
    }
    {
        MethodInfo cc;
        cc.name = "CC";
        cc.kind = MethodKind::terminal;
        cc.params = {{"order", ParamKind::string, false, "identity",
                      "'identity' or an explicit comma-separated label permutation"}};
        cc.extra_validate = [](const StageSpec& spec, std::vector<std::string>& issues) {
            const std::string order = spec.param_or("order", "identity");
            if (order == "identity") return;
            try {
                std::vector<int> parsed = detail::parse_order_param(order);
                std::sort(parsed.begin(), parsed.end());
                for (std::size_t i = 0; i < parsed.size(); ++i)
                    if (parsed[i] != static_cast<int>(i)) {
                        issues.push_back("order '" + order + "' is not a permutation of 0..len-1");
                        return;
                    }
            } catch (const ConfigError& e) {
                issues.push_back(e.what());
            }
        };
        cc.fit_terminal = [](const StageSpec& spec, const Problem& problem,
                             const BinaryLearnerSpec& base,
                             std::uint64_t seed) -> std::unique_ptr<TerminalModel> {
            detail::require_binary_targets(problem, "CC");
            const std::string order_raw = spec.param_or("order", "identity");
            ChainOrder order =
                order_raw == "identity"
                    ? ChainOrder::identity(problem.targets.cols())
                    : ChainOrder::given(detail::parse_order_param(order_raw));
            if (static_cast<int>(order.permutation.size()) != problem.targets.cols())
                throw ConfigError("CC order length does not match the label count");
            return cc_fit(problem.features, problem.targets.labels(), base, std::move(order), seed);
        };
        add(std::move(cc));
    }
    {
        MethodInfo rcc;
        rcc.name = "rCC";
        rcc.kind = MethodKind::terminal;
        rcc.fit_terminal = [](const StageSpec&, const Problem& problem, const BinaryLearnerSpec& base,
                              std::uint64_t seed) -> std::unique_ptr<TerminalModel> {
            detail::require_binary_targets(problem, "rCC");
            ChainOrder order = ChainOrder::random(problem.targets.cols(),
                                                  derive_seed(seed, seed_tag::chain_order));
            return cc_fit(problem.features, problem.targets.labels(), base, std::move(order), seed);
        };
        add(std::move(rcc));
    }
    {
        MethodInfo lp;
        lp.name = "LP";
        lp.kind = MethodKind::terminal;
        lp.fit_terminal = [](const StageSpec&, const Problem& problem, const BinaryLearnerSpec& base,
                             std::uint64_t seed) -> std::unique_ptr<TerminalModel> {
            detail::require_binary_targets(problem, "LP");
            return lp_fit(problem.features, problem.targets.labels(), base, seed);
        };
        add(std::move(lp));
    }
    {
        MethodInfo rakel;
        rakel.name = "RAkEL";
        rakel.kind = MethodKind::terminal;
        rakel.params = {{"k", ParamKind::expression, false, "3", "labelset size"},
                        {"m", ParamKind::expression, false, "numL*2", "ensemble size"}};
        rakel.fit_terminal = [](const StageSpec& spec, const Problem& problem,
                                const BinaryLearnerSpec& base,
                                std::uint64_t seed) -> std::unique_ptr<TerminalModel> {
            detail::require_binary_targets(problem, "RAkEL");
            const StatsRecord stats = detail::problem_stats(problem);
            const int k = resolve_dim(spec.param_or("k", "3"), stats, stats.num_labels);
            const int m = resolve_dim(spec.param_or("m", "numL*2"), stats,
                                      std::numeric_limits<int>::max());
            return rakel_fit(problem.features, problem.targets.labels(), base, k, m, seed);
        };
        add(std::move(rakel));
    }
    {
        MethodInfo rpc;
        rpc.name = "RPC";
        rpc.kind = MethodKind::terminal;
        rpc.fit_terminal = [](const StageSpec&, const Problem& problem, const BinaryLearnerSpec& base,
                              std::uint64_t seed) -> std::unique_ptr<TerminalModel> {
            detail::require_binary_targets(problem, "RPC");
            return rpc_fit(problem.features, problem.targets.labels(), base, seed);
        };
        add(std::move(rpc));
    }
    {
        MethodInfo rsl;
        rsl.name = "RSL";
        rsl.kind = MethodKind::terminal;
        rsl.fit_terminal = [](const StageSpec&, const Problem& problem, const BinaryLearnerSpec& base,
                              std::uint64_t seed) -> std::unique_ptr<TerminalModel> {
            detail::require_binary_targets(problem, "RSL");
            return rsl_fit(problem.features, problem.targets.labels(), base, seed);
        };
        add(std::move(rsl));
    }
}

} // namespace mlc
