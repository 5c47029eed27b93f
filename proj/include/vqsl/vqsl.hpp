// Umbrella header for the whole library (the CLI layer stays separate so
// library users do not pull in CLI11).

#pragma once

#include "vqsl/errors.hpp"
#include "vqsl/metrics.hpp"
#include "vqsl/parallel.hpp"
#include "vqsl/qmat.hpp"
#include "vqsl/states.hpp"
#include "vqsl/sweep.hpp"
#include "vqsl/tolerances.hpp"
#include "vqsl/vchannel.hpp"
