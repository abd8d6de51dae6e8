#pragma once

// Uplink hotspot simulator: max-min rate allocation by normalized
// fixed-point iteration over a standard interference mapping, plus
// discrete receive-beam search by simulated annealing.

#include "beamfair/antenna.hpp"
#include "beamfair/beams.hpp"
#include "beamfair/channel.hpp"
#include "beamfair/csv.hpp"
#include "beamfair/errors.hpp"
#include "beamfair/experiment.hpp"
#include "beamfair/geometry.hpp"
#include "beamfair/matrix.hpp"
#include "beamfair/metrics.hpp"
#include "beamfair/parallel.hpp"
#include "beamfair/params.hpp"
#include "beamfair/rng.hpp"
#include "beamfair/scenario.hpp"
#include "beamfair/search.hpp"
#include "beamfair/solver.hpp"
#include "beamfair/units.hpp"
