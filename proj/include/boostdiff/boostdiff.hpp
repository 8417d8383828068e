#ifndef BOOSTDIFF_BOOSTDIFF_HPP
#define BOOSTDIFF_BOOSTDIFF_HPP

#include "boost_core.hpp"
#include "special_functions.hpp"
#include "quadrature.hpp"
#include "kernel.hpp"
#include "spectral_oracle.hpp"
#include "bandlimited.hpp"
#include "kinetic_models.hpp"
#include "io.hpp"
#include "verify.hpp"

#endif
