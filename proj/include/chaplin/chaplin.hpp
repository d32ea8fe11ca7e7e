#pragma once

#include "chaplin/cast.hpp"
#include "chaplin/corpus.hpp"
#include "chaplin/defaults.hpp"
#include "chaplin/errors.hpp"
#include "chaplin/match.hpp"
#include "chaplin/metrics.hpp"
#include "chaplin/network.hpp"
#include "chaplin/pipeline.hpp"
#include "chaplin/sweep.hpp"
