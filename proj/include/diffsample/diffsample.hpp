#pragma once

#include "diffsample/characteristics.hpp"
#include "diffsample/diffusion.hpp"
#include "diffsample/edge_list.hpp"
#include "diffsample/errors.hpp"
#include "diffsample/experiment.hpp"
#include "diffsample/generators.hpp"
#include "diffsample/graph.hpp"
#include "diffsample/rng.hpp"
#include "diffsample/sampling.hpp"
