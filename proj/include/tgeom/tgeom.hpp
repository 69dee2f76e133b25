#pragma once

#include "tgeom/core_types.hpp"
#include "tgeom/world_function.hpp"
#include "tgeom/geometries.hpp"
#include "tgeom/polygon_region.hpp"
#include "tgeom/config.hpp"
#include "tgeom/sigma_calculus.hpp"
#include "tgeom/deformation.hpp"
#include "tgeom/explorer.hpp"
#include "tgeom/report.hpp"
