#pragma once

#include "coarsecat/bits.hpp"
#include "coarsecat/diagram.hpp"
#include "coarsecat/enumerate.hpp"
#include "coarsecat/errors.hpp"
#include "coarsecat/homotopy.hpp"
#include "coarsecat/limits.hpp"
#include "coarsecat/oracle.hpp"
#include "coarsecat/relalg.hpp"
#include "coarsecat/semilinear.hpp"
#include "coarsecat/space.hpp"
#include "coarsecat/symnat.hpp"
