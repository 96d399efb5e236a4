#pragma once

#include "wastesort/category.hpp"
#include "wastesort/classify.hpp"
#include "wastesort/error.hpp"
#include "wastesort/layout.hpp"
#include "wastesort/metrics.hpp"
#include "wastesort/motion.hpp"
#include "wastesort/optimize.hpp"
#include "wastesort/plot.hpp"
#include "wastesort/simulate.hpp"
#include "wastesort/version.hpp"
