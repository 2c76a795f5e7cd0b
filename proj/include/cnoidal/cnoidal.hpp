#pragma once

#include "cnoidal/cn_algebra.hpp"
#include "cnoidal/coeff_solver.hpp"
#include "cnoidal/elliptic.hpp"
#include "cnoidal/errors.hpp"
#include "cnoidal/io.hpp"
#include "cnoidal/parameters.hpp"
#include "cnoidal/polynomial.hpp"
#include "cnoidal/rational.hpp"
#include "cnoidal/reduction.hpp"
#include "cnoidal/residual.hpp"
#include "cnoidal/serialization.hpp"
#include "cnoidal/solution_families.hpp"
