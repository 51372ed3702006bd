#ifndef HEATG_HEATG_HPP
#define HEATG_HEATG_HPP

#include "heatg/errors.hpp"
#include "heatg/quadrature.hpp"
#include "heatg/specfun.hpp"
#include "heatg/kernels.hpp"
#include "heatg/semigroup.hpp"
#include "heatg/areagfun.hpp"
#include "heatg/verify.hpp"
#include "heatg/envelopes.hpp"
#include "heatg/csv.hpp"
#include "heatg/suites.hpp"

#endif  // HEATG_HEATG_HPP
