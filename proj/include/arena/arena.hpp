#pragma once

// Atomic bottleneck routing games: models, dynamics, equilibrium analysis,
// instance generators and file formats.

#include "arena/analysis.hpp"
#include "arena/dynamics.hpp"
#include "arena/error.hpp"
#include "arena/exact.hpp"
#include "arena/game.hpp"
#include "arena/generators.hpp"
#include "arena/graph.hpp"
#include "arena/io.hpp"
#include "arena/rng.hpp"
