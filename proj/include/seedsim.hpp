#pragma once

#include "seedsim/analysis.hpp"
#include "seedsim/centrality.hpp"
#include "seedsim/csv.hpp"
#include "seedsim/diffusion.hpp"
#include "seedsim/errors.hpp"
#include "seedsim/experiment.hpp"
#include "seedsim/generators.hpp"
#include "seedsim/graph.hpp"
#include "seedsim/metrics.hpp"
#include "seedsim/rng.hpp"
#include "seedsim/seeding.hpp"
