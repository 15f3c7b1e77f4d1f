#pragma once

// Umbrella header.

#include "swarmill/classifier.hpp"
#include "swarmill/connectivity.hpp"
#include "swarmill/core.hpp"
#include "swarmill/dynamics.hpp"
#include "swarmill/init.hpp"
#include "swarmill/io.hpp"
#include "swarmill/metrics.hpp"
#include "swarmill/mill_analysis.hpp"
#include "swarmill/svg.hpp"
#include "swarmill/sweep.hpp"
