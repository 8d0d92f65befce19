#pragma once

#include "tiltlab/bgengine.hpp"
#include "tiltlab/charge.hpp"
#include "tiltlab/chern.hpp"
#include "tiltlab/exactform.hpp"
#include "tiltlab/hyperquad.hpp"
#include "tiltlab/nsgeom.hpp"
#include "tiltlab/rational.hpp"
#include "tiltlab/stabkit.hpp"
