#pragma once
// Umbrella header for the fractional-order filter toolkit.

#include "design.hpp"
#include "ga.hpp"
#include "response.hpp"
#include "svg.hpp"
#include "sweep.hpp"
