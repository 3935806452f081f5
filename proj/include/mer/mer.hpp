#pragma once

#include "mer/enclose.hpp"
#include "mer/error.hpp"
#include "mer/generate.hpp"
#include "mer/geom.hpp"
#include "mer/io.hpp"
#include "mer/layers.hpp"
#include "mer/parallel.hpp"
#include "mer/rng.hpp"
#include "mer/solver.hpp"
#include "mer/valid_pairs.hpp"
