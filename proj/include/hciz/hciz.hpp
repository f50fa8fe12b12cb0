#pragma once

#include "hciz/errors.hpp"
#include "hciz/exact_poly.hpp"
#include "hciz/generator_poly.hpp"
#include "hciz/hciz_numeric.hpp"
#include "hciz/matrix_invariant.hpp"
#include "hciz/monte_carlo.hpp"
#include "hciz/partition.hpp"
#include "hciz/rational.hpp"
#include "hciz/rng.hpp"
#include "hciz/symmetric.hpp"
