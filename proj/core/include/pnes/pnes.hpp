#pragma once

#include "pnes/dispersion.hpp"
#include "pnes/errors.hpp"
#include "pnes/fock_space.hpp"
#include "pnes/meanfield.hpp"
#include "pnes/observables.hpp"
#include "pnes/propagator.hpp"
#include "pnes/states.hpp"
#include "pnes/version.hpp"
