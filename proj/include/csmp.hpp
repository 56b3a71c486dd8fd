#pragma once

#include "csmp/error.hpp"
#include "csmp/io.hpp"
#include "csmp/periodicity.hpp"
#include "csmp/pursuit.hpp"
#include "csmp/ramanujan.hpp"
#include "csmp/rft.hpp"
#include "csmp/shifted.hpp"
#include "csmp/signals.hpp"
#include "csmp/subspace.hpp"
