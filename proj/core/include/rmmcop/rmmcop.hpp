#pragma once

#include "rmmcop/copula.hpp"
#include "rmmcop/diagonal.hpp"
#include "rmmcop/errors.hpp"
#include "rmmcop/generator.hpp"
#include "rmmcop/inference.hpp"
#include "rmmcop/io.hpp"
#include "rmmcop/measure.hpp"
#include "rmmcop/piecewise.hpp"
#include "rmmcop/polynomial.hpp"
#include "rmmcop/presets.hpp"
#include "rmmcop/quadrature.hpp"
#include "rmmcop/sampler.hpp"
