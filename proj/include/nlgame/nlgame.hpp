#pragma once

// Umbrella header.

#include "nlgame/error.hpp"
#include "nlgame/linalg.hpp"
#include "nlgame/graph.hpp"
#include "nlgame/game.hpp"
#include "nlgame/predicate_dsl.hpp"
#include "nlgame/json_util.hpp"
#include "nlgame/game_io.hpp"
#include "nlgame/game_graph.hpp"
#include "nlgame/independence.hpp"
#include "nlgame/sdp.hpp"
#include "nlgame/quantum.hpp"
#include "nlgame/quantum_io.hpp"
#include "nlgame/report.hpp"
#include "nlgame/catalog.hpp"
