#pragma once

// Umbrella header for the exact lattice laboratory.

#include "gpl/error.hpp"
#include "gpl/scalar.hpp"
#include "gpl/matrix.hpp"
#include "gpl/echelon.hpp"
#include "gpl/subspace.hpp"
#include "gpl/quotient.hpp"
#include "gpl/form.hpp"
#include "gpl/json_io.hpp"
#include "gpl/complex.hpp"
#include "gpl/spacetime.hpp"
#include "gpl/green.hpp"
#include "gpl/surface.hpp"
#include "gpl/models.hpp"
#include "gpl/cauchy.hpp"
#include "gpl/subsidiary.hpp"
#include "gpl/surface_ops.hpp"
#include "gpl/brst.hpp"

namespace gpl {

inline const char* version() { return "0.1.0"; }

} // namespace gpl
