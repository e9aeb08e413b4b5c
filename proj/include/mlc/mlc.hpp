#pragma once

// Umbrella header for the MLC pipeline toolkit.

#include "mlc/core/error.hpp"
#include "mlc/core/label_matrix.hpp"
#include "mlc/core/parallel.hpp"
#include "mlc/core/rng.hpp"
#include "mlc/core/sparse_matrix.hpp"

#include "mlc/cross_validation.hpp"
#include "mlc/dataset.hpp"
#include "mlc/io/svmlight.hpp"
#include "mlc/problem.hpp"

#include "mlc/base/base_learner.hpp"
#include "mlc/base/knn.hpp"
#include "mlc/base/linear_svm.hpp"
#include "mlc/base/ridge.hpp"
#include "mlc/base/scorer.hpp"

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

#include "mlc/metrics.hpp"
#include "mlc/pipeline.hpp"
#include "mlc/thresholding.hpp"

#include "mlc/experiment.hpp"
