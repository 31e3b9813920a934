#pragma once

#include "hgops/core.hpp"
#include "hgops/power_series.hpp"
#include "hgops/function_spec.hpp"
#include "hgops/smooth_window.hpp"
#include "hgops/quadrature.hpp"
#include "hgops/space.hpp"
#include "hgops/norms.hpp"
#include "hgops/moments.hpp"
#include "hgops/operators.hpp"
#include "hgops/probes.hpp"
#include "hgops/serialization.hpp"
