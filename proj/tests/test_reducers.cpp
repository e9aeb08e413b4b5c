#include <catch2/catch.hpp>

#include <cmath>

#include "mlc/core/rng.hpp"
#include "mlc/reducers/dim_expr.hpp"
#include "mlc/reducers/kmeans.hpp"
#include "mlc/reducers/pca.hpp"
#include "mlc/reducers/plst.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace mlc;

namespace {
FeatureMatrix dense(const Eigen::MatrixXd& m) { return FeatureMatrix::from_dense(m); }

StatsRecord stats_with(int n, int num_features, int num_labels) {
    StatsRecord s;
    s.n = n;
    s.num_features = num_features;
    s.num_labels = num_labels;
    return s;
}
} // namespace

// ------------------------------------------------------------------ dim expr

TEST_CASE("resolve_dim: literals, expressions, floor, caps") {
    CHECK(resolve_dim("300", stats_with(1000, 500, 5), 500) == 300);
    CHECK(resolve_dim("numF*0.5", stats_with(1000, 300, 5), 300) == 150);
    CHECK(resolve_dim("numF*0.5", stats_with(1000, 7, 5), 7) == 3); // floor
    CHECK(resolve_dim("numL/2", stats_with(10, 4, 9), 9) == 4);
    CHECK(resolve_dim("n*0.25", stats_with(40, 4, 4), 100) == 10);

    // idempotent on integer literals, always within [1, cap]
    CHECK(resolve_dim("17", stats_with(10, 20, 5), 20) == 17);
    CHECK(resolve_dim("17", stats_with(10, 20, 5), 8) == 8); // capped
    CHECK(resolve_dim("1", stats_with(10, 20, 5), 20) == 1);

    CHECK_THROWS_AS(resolve_dim("numF*", stats_with(4, 4, 4), 4), ConfigError);
    CHECK_THROWS_AS(resolve_dim("bogus", stats_with(4, 4, 4), 4), ConfigError);
    CHECK_THROWS_AS(resolve_dim("numF*0", stats_with(4, 4, 4), 4), ConfigError); // < 1
    CHECK_THROWS_AS(resolve_dim("", stats_with(4, 4, 4), 4), ConfigError);
    CHECK_THROWS_AS(resolve_dim("numF+2", stats_with(4, 4, 4), 4), ConfigError); // only * and /
    CHECK_NOTHROW(check_dim_expr("numF*0.5/2"));
    CHECK_THROWS_AS(check_dim_expr("numX"), ConfigError);
}

// ----------------------------------------------------------------------- pca

TEST_CASE("pca: axis-aligned two-point cloud") {
    Eigen::MatrixXd x(3, 2);
    x << 1, 0, -1, 0, 0, 0;
    const PcaState state = pca_fit(dense(x), 1);
    CHECK(state.mean.cwiseAbs().maxCoeff() == Approx(0.0).margin(1e-12));
    CHECK(state.components(0, 0) == Approx(1.0).margin(1e-12));
    CHECK(state.components(1, 0) == Approx(0.0).margin(1e-12));
}

TEST_CASE("pca: full k is an orthogonal change of basis (zero reconstruction error)") {
    const Eigen::MatrixXd x = synthetic::random_matrix(10, 4, 21);
    const PcaState state = pca_fit(dense(x), 4);
    CHECK((state.components.transpose() * state.components -
           Eigen::MatrixXd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    const Eigen::MatrixXd z = pca_transform(state, dense(x)).to_dense();
    Eigen::MatrixXd reconstructed = z * state.components.transpose();
    reconstructed.rowwise() += state.mean.transpose();
    CHECK((reconstructed - x).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("pca: rank-1 matrix explains everything with one component") {
    Eigen::MatrixXd x(5, 3);
    for (int i = 0; i < 5; ++i) x.row(i) = (i - 2.0) * Eigen::RowVector3d(1.0, 2.0, -1.0);
    const PcaState state = pca_fit(dense(x), 1);
    CHECK(state.explained_variance_ratio()(0) == Approx(1.0).margin(1e-12));
}

TEST_CASE("pca: components match the covariance eigendecomposition oracle") {
    Rng rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_below(20));
        const int d = 1 + static_cast<int>(rng.uniform_below(6));
        const int k = std::min(n - 1, d);
        const Eigen::MatrixXd x = synthetic::random_matrix(n, d, rng.next_u64());
        const PcaState state = pca_fit(dense(x), k);

        Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
        const auto eig = oracle::jacobi_eigen_symmetric(centered.transpose() * centered);
        for (int j = 0; j < k; ++j) {
            const Eigen::VectorXd impl = state.components.col(j);
            const Eigen::VectorXd ref = eig.vectors.col(j);
            const double diff = std::min((impl - ref).cwiseAbs().maxCoeff(),
                                         (impl + ref).cwiseAbs().maxCoeff());
            CHECK(diff < 1e-8);
            CHECK(state.singular_values(j) * state.singular_values(j) ==
                  Approx(eig.values(j)).margin(1e-8));
            if (j > 0) CHECK(state.singular_values(j) <= state.singular_values(j - 1) + 1e-12);
        }
    }
}

TEST_CASE("pca_transform: centering and orthonormality consequences") {
    const Eigen::MatrixXd x = synthetic::random_matrix(8, 3, 5);
    const PcaState state = pca_fit(dense(x), 2);

    Eigen::MatrixXd mean_row = state.mean.transpose();
    CHECK(pca_transform(state, dense(mean_row)).to_dense().cwiseAbs().maxCoeff() < 1e-12);

    Eigen::MatrixXd shifted = mean_row + state.components.col(0).transpose();
    const Eigen::MatrixXd z = pca_transform(state, dense(shifted)).to_dense();
    CHECK(z(0, 0) == Approx(1.0).margin(1e-10));
    CHECK(z(0, 1) == Approx(0.0).margin(1e-10));

    CHECK_THROWS_AS(pca_transform(state, dense(synthetic::random_matrix(2, 5, 1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(pca_fit(dense(x), 0), std::invalid_argument);
    CHECK_THROWS_AS(pca_fit(dense(x), 9), std::invalid_argument);
}

TEST_CASE("pca: iterative path agrees with the dense path") {
    // decaying spectrum so subspace iteration converges crisply
    Rng rng(4242);
    Eigen::MatrixXd x = synthetic::random_matrix(40, 8, 999);
    for (int j = 0; j < 8; ++j) x.col(j) *= std::pow(0.55, j);

    SvdOptions iterative;
    iterative.densify_threshold = 0; // force the matrix-free path
    const PcaState a = pca_fit(dense(x), 3, iterative, 1);
    const PcaState b = pca_fit(dense(x), 3);
    for (int j = 0; j < 3; ++j) {
        const double diff = std::min((a.components.col(j) - b.components.col(j)).cwiseAbs().maxCoeff(),
                                     (a.components.col(j) + b.components.col(j)).cwiseAbs().maxCoeff());
        CHECK(diff < 1e-6);
        CHECK(a.singular_values(j) == Approx(b.singular_values(j)).epsilon(1e-8));
    }
}

// -------------------------------------------------------------------- kmeans

TEST_CASE("kmeans: recovers the optimal bipartition of two tight groups") {
    Eigen::MatrixXd points(4, 1);
    points << 0.0, 0.1, 10.0, 10.1;
    const KmeansState state = kmeans_fit(dense(points), 2, 7);

    double best_cost = 0.0;
    const std::vector<int> oracle_assignment = oracle::best_bipartition_wcss(points, &best_cost);
    CHECK(state.inertia == Approx(best_cost).margin(1e-9));
    // same partition up to cluster relabeling
    const auto& got = state.train_assignment;
    const bool same = (got[0] == got[1] && got[2] == got[3] && got[0] != got[2]);
    CHECK(same);
}

TEST_CASE("kmeans: m=1 is the column mean; m=n zeroes the inertia") {
    const Eigen::MatrixXd x = synthetic::random_matrix(9, 3, 11);
    const KmeansState one = kmeans_fit(dense(x), 1, 0);
    CHECK((one.centroids.row(0).transpose() - dense(x).column_means()).cwiseAbs().maxCoeff() < 1e-12);
    double total = 0.0;
    for (int i = 0; i < 9; ++i)
        total += (x.row(i) - one.centroids.row(0)).squaredNorm();
    CHECK(one.inertia == Approx(total).margin(1e-9));

    const KmeansState all = kmeans_fit(dense(x), 9, 3);
    CHECK(all.inertia == Approx(0.0).margin(1e-12));
}

TEST_CASE("kmeans_assign: exact membership and tie rule") {
    KmeansState state;
    state.clusters = 3;
    state.centroids.resize(3, 1);
    state.centroids << 0.0, 1.0, 2.0;

    Eigen::MatrixXd probe(2, 1);
    probe << 1.0, 1.0; // equal to centroid 1; also build an equidistant case
    CHECK(kmeans_assign(state, dense(probe))[0] == 1);

    Eigen::MatrixXd equidistant(1, 1);
    equidistant << 1.0;
    KmeansState two;
    two.clusters = 3;
    two.centroids.resize(3, 1);
    two.centroids << 0.0, 99.0, 2.0; // clusters 0 and 2 both at distance 1
    CHECK(kmeans_assign(two, dense(equidistant))[0] == 0);

    CHECK_THROWS_AS(kmeans_assign(state, dense(synthetic::random_matrix(1, 2, 0))),
                    std::invalid_argument);
}

TEST_CASE("kmeans: stored training assignment is the assign() fixed point") {
    Rng rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + static_cast<int>(rng.uniform_below(40));
        const int m = 1 + static_cast<int>(rng.uniform_below(std::min(n, 6)));
        const Eigen::MatrixXd x = synthetic::random_matrix(n, 2, rng.next_u64());
        const KmeansState state = kmeans_fit(dense(x), m, rng.next_u64());
        CHECK(kmeans_assign(state, dense(x)) == state.train_assignment);
        for (std::size_t it = 1; it < state.inertia_history.size(); ++it)
            CHECK(state.inertia_history[it] <= state.inertia_history[it - 1] * (1 + 1e-12) + 1e-9);
        for (int c = 0; c < m; ++c) CHECK(state.centroids.row(c).allFinite());
    }
    CHECK_THROWS_AS(kmeans_fit(dense(synthetic::random_matrix(3, 2, 0)), 4, 0),
                    std::invalid_argument);
}

TEST_CASE("kmeans: duplicate points with extra clusters stay total") {
    Eigen::MatrixXd x(4, 1);
    x << 1.0, 1.0, 1.0, 1.0;
    const KmeansState state = kmeans_fit(dense(x), 2, 5);
    CHECK(state.train_assignment.size() == 4);
    CHECK(state.inertia == Approx(0.0).margin(1e-12));
}

// ---------------------------------------------------------------------- plst

TEST_CASE("plst: 2x2 antisymmetric labels give the hand-computed basis") {
    const LabelMatrix y({{0}, {1}}, 2);
    const PlstState state = plst_fit(Targets::binary(y), 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(state.label_mean(0) == Approx(0.5));
    CHECK(state.label_mean(1) == Approx(0.5));
    CHECK(state.basis(0, 0) == Approx(inv_sqrt2).margin(1e-10));
    CHECK(state.basis(1, 0) == Approx(-inv_sqrt2).margin(1e-10));

    const Eigen::MatrixXd z = plst_encode(state, Targets::binary(y));
    CHECK(z(0, 0) == Approx(inv_sqrt2).margin(1e-10));
    CHECK(z(1, 0) == Approx(-inv_sqrt2).margin(1e-10));
}

TEST_CASE("plst: identical label rows decode to the constant row") {
    const LabelMatrix y({{0, 2}, {0, 2}, {0, 2}}, 3);
    const PlstState state = plst_fit(Targets::binary(y), 1);
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 1);
    const Eigen::MatrixXd decoded = plst_decode(state, zero);
    for (int i = 0; i < 2; ++i) {
        CHECK(decoded(i, 0) == Approx(1.0));
        CHECK(decoded(i, 1) == Approx(0.0).margin(1e-12));
        CHECK(decoded(i, 2) == Approx(1.0));
    }
}

TEST_CASE("plst: full-rank encode/decode round trip") {
    Rng rng(727);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 6 + static_cast<int>(rng.uniform_below(20));
        const int num_labels = 2 + static_cast<int>(rng.uniform_below(5));
        const LabelMatrix y = synthetic::random_labels(n, num_labels, rng.next_u64(), 0.4);
        const int k = std::min(n, num_labels);
        const PlstState state = plst_fit(Targets::binary(y), k);
        const Eigen::MatrixXd z = plst_encode(state, Targets::binary(y));
        const Eigen::MatrixXd decoded = plst_decode(state, z);
        CHECK((decoded - y.to_dense()).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("plst: decode is linear before the clamp and clamps after") {
    const LabelMatrix y({{0}, {1}, {0, 1}}, 2);
    const PlstState state = plst_fit(Targets::binary(y), 1);
    const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);
    const Eigen::MatrixXd at_mean = plst_decode(state, zero);
    CHECK(at_mean(0, 0) == Approx(state.label_mean(0)));

    Eigen::MatrixXd big(1, 1);
    big << 1e6; // far out along the basis: clamp must bite
    const Eigen::MatrixXd clamped = plst_decode(state, big);
    CHECK(clamped.minCoeff() >= 0.0);
    CHECK(clamped.maxCoeff() <= 1.0);

    CHECK_THROWS_AS(plst_decode(state, Eigen::MatrixXd::Zero(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(plst_fit(Targets::binary(y), 5), std::invalid_argument);
}
