#pragma once

#include "ptsep/automaton.hpp"
#include "ptsep/budget.hpp"
#include "ptsep/closures.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/digraph.hpp"
#include "ptsep/error.hpp"
#include "ptsep/json_io.hpp"
#include "ptsep/operations.hpp"
#include "ptsep/oracles.hpp"
#include "ptsep/prefix_towers.hpp"
#include "ptsep/pt_check.hpp"
#include "ptsep/separation.hpp"
#include "ptsep/tower.hpp"
