#pragma once

#include "curvelike/canonical.hpp"
#include "curvelike/classify.hpp"
#include "curvelike/decomposition.hpp"
#include "curvelike/dvg.hpp"
#include "curvelike/error.hpp"
#include "curvelike/exact.hpp"
#include "curvelike/laufer.hpp"
#include "curvelike/lattice.hpp"
#include "curvelike/props.hpp"
#include "curvelike/realize.hpp"
#include "curvelike/script.hpp"
#include "curvelike/transforms.hpp"
