#ifndef BETTILIN_BETTILIN_HPP
#define BETTILIN_BETTILIN_HPP

#include "bettilin/errors.hpp"
#include "bettilin/field.hpp"
#include "bettilin/homology.hpp"
#include "bettilin/monomial.hpp"
#include "bettilin/parallel.hpp"
#include "bettilin/poset.hpp"
#include "bettilin/resolution.hpp"
#include "bettilin/sparse.hpp"
#include "bettilin/taylor.hpp"

#endif  // BETTILIN_BETTILIN_HPP
