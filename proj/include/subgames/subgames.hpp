#pragma once

#include "subgames/classical.hpp"
#include "subgames/experiments.hpp"
#include "subgames/game.hpp"
#include "subgames/generate.hpp"
#include "subgames/oracle.hpp"
#include "subgames/quantum.hpp"
#include "subgames/rng.hpp"
#include "subgames/stats.hpp"
