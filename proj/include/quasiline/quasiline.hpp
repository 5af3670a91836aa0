#pragma once

#include "quasiline/lattice.hpp"
#include "quasiline/fan.hpp"
#include "quasiline/rng.hpp"
#include "quasiline/divisor.hpp"
#include "quasiline/bundle.hpp"
#include "quasiline/poly.hpp"
#include "quasiline/cubic.hpp"
#include "quasiline/models.hpp"
#include "quasiline/io.hpp"
