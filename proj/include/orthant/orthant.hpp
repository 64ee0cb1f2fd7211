#pragma once

#include "orthant/numeric.hpp"
#include "orthant/simplex.hpp"
#include "orthant/polyhedron.hpp"
#include "orthant/bang.hpp"
#include "orthant/positivity.hpp"
#include "orthant/hedgehog.hpp"
#include "orthant/classify.hpp"
#include "orthant/structure.hpp"
#include "orthant/realize.hpp"
#include "orthant/cones.hpp"
#include "orthant/io.hpp"
#include "orthant/cli.hpp"
