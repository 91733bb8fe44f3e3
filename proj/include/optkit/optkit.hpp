#pragma once

// Umbrella header.

#include <optkit/core/csv.hpp>
#include <optkit/core/rng.hpp>
#include <optkit/core/types.hpp>
#include <optkit/function/full_batch_view.hpp>
#include <optkit/function/numerical_gradient.hpp>
#include <optkit/function/objective.hpp>
#include <optkit/function/traits.hpp>
#include <optkit/lbfgs/history.hpp>
#include <optkit/lbfgs/lbfgs.hpp>
#include <optkit/lbfgs/line_search.hpp>
#include <optkit/problems/dataset.hpp>
#include <optkit/problems/linear_regression.hpp>
#include <optkit/problems/rosenbrock.hpp>
#include <optkit/sa/simulated_annealing.hpp>
#include <optkit/sgd/sgd.hpp>
#include <optkit/update/update_policies.hpp>
#include <optkit/update/update_state.hpp>
