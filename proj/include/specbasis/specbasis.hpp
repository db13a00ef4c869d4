#pragma once

// Everything except io.hpp, which additionally needs nlohmann/json.

#include "specbasis/errors.hpp"
#include "specbasis/chebyshev.hpp"
#include "specbasis/singular_function.hpp"
#include "specbasis/quadrature.hpp"
#include "specbasis/transforms.hpp"
#include "specbasis/linalg.hpp"
#include "specbasis/approximants.hpp"
#include "specbasis/analysis.hpp"
