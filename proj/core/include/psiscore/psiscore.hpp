#pragma once

#include "psiscore/activity.hpp"
#include "psiscore/bench.hpp"
#include "psiscore/generators.hpp"
#include "psiscore/graph.hpp"
#include "psiscore/metrics.hpp"
#include "psiscore/operator.hpp"
#include "psiscore/solvers.hpp"
