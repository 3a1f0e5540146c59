// SPDX-License-Identifier: Apache-2.0
#pragma once

// everything except dilation_search.hpp (GSL) and io.hpp (nlohmann/json)
#include "branch_search.hpp"
#include "classical_maps.hpp"
#include "core.hpp"
#include "geometry_sampling.hpp"
#include "jacobi.hpp"
#include "matrix.hpp"
#include "quantum_accessibility.hpp"
#include "unistochasticity.hpp"
#include "weyl_algebra.hpp"
