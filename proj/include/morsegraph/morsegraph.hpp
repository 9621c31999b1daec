#pragma once

// Umbrella header.

#include "morsegraph/analytic.hpp"
#include "morsegraph/cycles.hpp"
#include "morsegraph/edge_list.hpp"
#include "morsegraph/error.hpp"
#include "morsegraph/exhaustive.hpp"
#include "morsegraph/experiment.hpp"
#include "morsegraph/gnp.hpp"
#include "morsegraph/graph.hpp"
#include "morsegraph/morse.hpp"
#include "morsegraph/parallel.hpp"
#include "morsegraph/property.hpp"
#include "morsegraph/pruned_search.hpp"
#include "morsegraph/square_graph.hpp"
#include "morsegraph/stats.hpp"
#include "morsegraph/validation.hpp"
