#pragma once

#include "apps.hpp"
#include "design.hpp"
#include "distribution.hpp"
#include "equilibrium.hpp"
#include "errors.hpp"
#include "game.hpp"
#include "interval_union.hpp"
#include "prior.hpp"
#include "representation.hpp"
#include "roots.hpp"
#include "simplex.hpp"
