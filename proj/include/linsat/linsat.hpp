#pragma once

#include "linsat/analysis.hpp"
#include "linsat/errors.hpp"
#include "linsat/generators.hpp"
#include "linsat/gf.hpp"
#include "linsat/instance.hpp"
#include "linsat/instance_io.hpp"
#include "linsat/rational.hpp"
#include "linsat/reduction.hpp"
#include "linsat/rng.hpp"
#include "linsat/solvers.hpp"
