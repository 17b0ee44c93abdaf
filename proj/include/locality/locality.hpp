#pragma once

#include "locality/cds.hpp"
#include "locality/engine.hpp"
#include "locality/error.hpp"
#include "locality/experiment.hpp"
#include "locality/generators.hpp"
#include "locality/graph.hpp"
#include "locality/graph_io.hpp"
#include "locality/lower_bound.hpp"
#include "locality/lp.hpp"
#include "locality/lp_local.hpp"
#include "locality/mvc.hpp"
#include "locality/oracles.hpp"
#include "locality/rational.hpp"
#include "locality/view_tree.hpp"
