#pragma once

#include "zetaband/divisors.hpp"
#include "zetaband/errors.hpp"
#include "zetaband/fitting.hpp"
#include "zetaband/gamma.hpp"
#include "zetaband/meansquare.hpp"
#include "zetaband/parallel.hpp"
#include "zetaband/pythagoras.hpp"
#include "zetaband/rational.hpp"
#include "zetaband/sawtooth.hpp"
#include "zetaband/summatory.hpp"
#include "zetaband/voronoi.hpp"
#include "zetaband/zeta.hpp"
