#pragma once

#include "ffcurve/slope.hpp"
#include "ffcurve/sheaf.hpp"
#include "ffcurve/tilt.hpp"
#include "ffcurve/bc.hpp"
#include "ffcurve/algebra/ring.hpp"
#include "ffcurve/algebra/matrix.hpp"
#include "ffcurve/complex.hpp"
#include "ffcurve/derham.hpp"
#include "ffcurve/cocycle.hpp"
#include "ffcurve/expr.hpp"
#include "ffcurve/io.hpp"
