#ifndef MULTIPERM_HPP
#define MULTIPERM_HPP

#include "multiperm/blurred.hpp"
#include "multiperm/boolvec.hpp"
#include "multiperm/dsm.hpp"
#include "multiperm/errors.hpp"
#include "multiperm/galois.hpp"
#include "multiperm/green.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/notation.hpp"
#include "multiperm/permutation.hpp"
#include "multiperm/regular.hpp"
#include "multiperm/relation.hpp"

#endif  // MULTIPERM_HPP
