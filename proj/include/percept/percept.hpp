#pragma once

#include "percept/belief_table.hpp"
#include "percept/distributions.hpp"
#include "percept/experiments.hpp"
#include "percept/game_model.hpp"
#include "percept/io.hpp"
#include "percept/penalty.hpp"
#include "percept/report.hpp"
#include "percept/solver_single.hpp"
#include "percept/solver_two.hpp"
