#pragma once

#include "awfair/adjusted_winner.hpp"
#include "awfair/epsilon_nash.hpp"
#include "awfair/equilibrium.hpp"
#include "awfair/errors.hpp"
#include "awfair/fairness.hpp"
#include "awfair/game.hpp"
#include "awfair/ordering.hpp"
#include "awfair/parallel.hpp"
#include "awfair/rational.hpp"
#include "awfair/two_item.hpp"
#include "awfair/valuation.hpp"
