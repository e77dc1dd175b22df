#pragma once

// Umbrella header: the machine and primitives, the sequential list library,
// the standard library, the skeletons and the maximum-prefix-sum application.
// The observation surface (bsml/observe.hpp) and the property suites
// (bsml/checks/suites.hpp) are deliberately not included here.

#include "bsml/errors.hpp"
#include "bsml/machine.hpp"
#include "bsml/mps.hpp"
#include "bsml/par_vector.hpp"
#include "bsml/primitives.hpp"
#include "bsml/seq.hpp"
#include "bsml/skeletons.hpp"
#include "bsml/stdlib.hpp"
#include "bsml/trace.hpp"
