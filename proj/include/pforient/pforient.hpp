#pragma once

// Umbrella header: cellulated-surface data model, GF(2)/integer linear
// algebra, the orientation-parity linear system, matching-based construction,
// counting/enumeration, JSON I/O, and the selftest suite.

#include "pforient/complex.hpp"
#include "pforient/enumerate.hpp"
#include "pforient/errors.hpp"
#include "pforient/generators.hpp"
#include "pforient/gf2.hpp"
#include "pforient/incidence.hpp"
#include "pforient/json_io.hpp"
#include "pforient/matching.hpp"
#include "pforient/selftest.hpp"
