#pragma once

// Umbrella header.

#include "hyperpoly/higgs.hpp"
#include "hyperpoly/hyperpolygon.hpp"
#include "hyperpoly/json_io.hpp"
#include "hyperpoly/linalg.hpp"
#include "hyperpoly/polynomial.hpp"
#include "hyperpoly/rational_function.hpp"
#include "hyperpoly/rng.hpp"
#include "hyperpoly/scalar.hpp"
#include "hyperpoly/symplectic.hpp"
