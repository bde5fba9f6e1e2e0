#pragma once

#include "esmc/connectivity.hpp"
#include "esmc/connectivity_oracle.hpp"
#include "esmc/construct.hpp"
#include "esmc/degree_sequence.hpp"
#include "esmc/engine.hpp"
#include "esmc/graph.hpp"
#include "esmc/heuristics.hpp"
#include "esmc/metrics.hpp"
#include "esmc/random.hpp"
