#pragma once

#include "adiff/antidiff.hpp"
#include "adiff/convkernel.hpp"
#include "adiff/error.hpp"
#include "adiff/expr.hpp"
#include "adiff/function.hpp"
#include "adiff/inequality.hpp"
#include "adiff/numkit.hpp"
#include "adiff/opalgebra.hpp"
