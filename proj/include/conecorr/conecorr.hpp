#ifndef CONECORR_CONECORR_HPP
#define CONECORR_CONECORR_HPP

#include "cone.hpp"
#include "correspondence.hpp"
#include "geometry.hpp"
#include "radstrom.hpp"
#include "rational.hpp"
#include "selection.hpp"

#endif
