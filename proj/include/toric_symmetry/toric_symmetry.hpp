#ifndef TORIC_SYMMETRY_TORIC_SYMMETRY_HPP
#define TORIC_SYMMETRY_TORIC_SYMMETRY_HPP

#include "bigint.hpp"
#include "factor_set.hpp"
#include "model.hpp"
#include "permutation.hpp"
#include "exactla.hpp"
#include "poset.hpp"
#include "random.hpp"
#include "wreath.hpp"
#include "generic.hpp"
#include "verify.hpp"
#include "io.hpp"
#include "analysis.hpp"

#endif
