#pragma once

#include "netgame/allocation.hpp"
#include "netgame/centrality.hpp"
#include "netgame/dynamics.hpp"
#include "netgame/equilibrium.hpp"
#include "netgame/extremal.hpp"
#include "netgame/graph.hpp"
#include "netgame/params.hpp"
#include "netgame/regime.hpp"
#include "netgame/reproduce.hpp"
#include "netgame/waterfill.hpp"
