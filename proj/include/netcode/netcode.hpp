#pragma once

// Umbrella header.

#include "netcode/acceptance.hpp"
#include "netcode/bits.hpp"
#include "netcode/bounds.hpp"
#include "netcode/budget.hpp"
#include "netcode/codes.hpp"
#include "netcode/engine.hpp"
#include "netcode/error.hpp"
#include "netcode/graph.hpp"
#include "netcode/parallel.hpp"
#include "netcode/partite_graph.hpp"
#include "netcode/progression_free.hpp"
#include "netcode/protocols.hpp"
#include "netcode/simplex.hpp"
#include "netcode/verifier.hpp"
