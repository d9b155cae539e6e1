#pragma once

#include "lira/rational.hpp"
#include "lira/matrix.hpp"
#include "lira/linalg.hpp"
#include "lira/validation.hpp"
#include "lira/comm_algebra.hpp"
#include "lira/lie_rinehart.hpp"
#include "lira/constructions.hpp"
#include "lira/uce.hpp"
#include "lira/homology.hpp"
#include "lira/lifting.hpp"
#include "lira/nabtensor.hpp"
