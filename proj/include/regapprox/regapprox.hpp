#pragma once

#include "regapprox/errors.hpp"
#include "regapprox/rational.hpp"
#include "regapprox/real.hpp"
#include "regapprox/matrix.hpp"
#include "regapprox/polynomial.hpp"
#include "regapprox/regrep.hpp"
#include "regapprox/roots.hpp"
#include "regapprox/powers.hpp"
#include "regapprox/convergence.hpp"
#include "regapprox/iterative.hpp"
#include "regapprox/csv.hpp"
#include "regapprox/bench.hpp"
