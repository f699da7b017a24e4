#pragma once

#include "gpolar/errors.hpp"
#include "gpolar/matcore.hpp"
#include "gpolar/polar.hpp"
#include "gpolar/sylvester.hpp"
#include "gpolar/bounds.hpp"
#include "gpolar/perturb.hpp"
#include "gpolar/matrix_io.hpp"
#include "gpolar/random.hpp"
#include "gpolar/experiments.hpp"
