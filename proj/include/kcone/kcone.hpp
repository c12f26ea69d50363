#pragma once

// Umbrella header for the kcone library.

#include "kcone/exact.hpp"
#include "kcone/rootdata.hpp"
#include "kcone/repcalc.hpp"
#include "kcone/nilpotent.hpp"
#include "kcone/ktheory.hpp"
#include "kcone/orbitalg.hpp"
#include "kcone/assocvar.hpp"
#include "kcone/serialize.hpp"
