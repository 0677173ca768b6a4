#pragma once

#include "error.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "rational.hpp"
#include "exact.hpp"
#include "heuristics.hpp"
#include "instances.hpp"
#include "analysis.hpp"
#include "game.hpp"
