#pragma once

#include "frackernel/error.hpp"
#include "frackernel/special.hpp"
#include "frackernel/quadrature.hpp"
#include "frackernel/stable.hpp"
#include "frackernel/kernels.hpp"
#include "frackernel/transform.hpp"
#include "frackernel/asymptotics.hpp"
#include "frackernel/montecarlo.hpp"
#include "frackernel/validation.hpp"
