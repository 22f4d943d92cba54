#pragma once

#include "apvnet/csv.hpp"
#include "apvnet/dataset.hpp"
#include "apvnet/error.hpp"
#include "apvnet/experiment.hpp"
#include "apvnet/features.hpp"
#include "apvnet/metrics.hpp"
#include "apvnet/nn.hpp"
#include "apvnet/rng.hpp"
