#pragma once

// Umbrella header for the whole library.

#include "mirror_morse/rational.hpp"
#include "mirror_morse/exact_weight.hpp"
#include "mirror_morse/polytope.hpp"
#include "mirror_morse/lagrangian.hpp"
#include "mirror_morse/morse_category.hpp"
#include "mirror_morse/dg_model.hpp"
#include "mirror_morse/json_io.hpp"
#include "mirror_morse/structure_table.hpp"
#include "mirror_morse/flow_verifier.hpp"
#include "mirror_morse/svg_plot.hpp"
#include "mirror_morse/verify.hpp"
