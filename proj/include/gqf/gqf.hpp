// SPDX-License-Identifier: Apache-2.0
#pragma once

// Umbrella header: probability of a negative sum of indefinite quadratic
// forms in complex Gaussian vectors, with characteristic-function and Monte
// Carlo cross-checks. Include the individual headers for finer control.

#include "gqf/charfun.hpp"
#include "gqf/closed_form.hpp"
#include "gqf/errors.hpp"
#include "gqf/gil_pelaez.hpp"
#include "gqf/legacy.hpp"
#include "gqf/mat2.hpp"
#include "gqf/model.hpp"
#include "gqf/montecarlo.hpp"
#include "gqf/quadrature.hpp"
#include "gqf/rng.hpp"
#include "gqf/selftest.hpp"
#include "gqf/spec_sampler.hpp"
#include "gqf/specfile.hpp"
#include "gqf/specfun.hpp"
