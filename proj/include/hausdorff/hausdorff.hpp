#pragma once

#include "hausdorff/automorphism.hpp"
#include "hausdorff/catalog.hpp"
#include "hausdorff/domain.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/hardy.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/operator.hpp"
#include "hausdorff/random_functions.hpp"
#include "hausdorff/types.hpp"
