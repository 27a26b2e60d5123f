#pragma once

#include "rutherford/classical.hpp"
#include "rutherford/cn_propagator.hpp"
#include "rutherford/config.hpp"
#include "rutherford/error.hpp"
#include "rutherford/experiment.hpp"
#include "rutherford/grid.hpp"
#include "rutherford/output.hpp"
#include "rutherford/potential.hpp"
#include "rutherford/tridiagonal.hpp"
#include "rutherford/units.hpp"
#include "rutherford/wavepacket.hpp"
