#pragma once

#include "gapline/adiabatic.hpp"
#include "gapline/bounds.hpp"
#include "gapline/error.hpp"
#include "gapline/graph.hpp"
#include "gapline/graph_io.hpp"
#include "gapline/random.hpp"
#include "gapline/serialize.hpp"
#include "gapline/spectral.hpp"
