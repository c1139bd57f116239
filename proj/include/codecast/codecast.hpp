#pragma once

// Umbrella header for the coded-broadcast library.

#include "codecast/baselines.hpp"
#include "codecast/chunked.hpp"
#include "codecast/degree_distribution.hpp"
#include "codecast/degree_model.hpp"
#include "codecast/errors.hpp"
#include "codecast/galois.hpp"
#include "codecast/growth.hpp"
#include "codecast/lt_codec.hpp"
#include "codecast/optimizer.hpp"
#include "codecast/packet.hpp"
#include "codecast/rng.hpp"
#include "codecast/scenario.hpp"
#include "codecast/sim.hpp"
#include "codecast/simplex.hpp"
#include "codecast/special_functions.hpp"
