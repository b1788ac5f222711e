#pragma once

#include "cocoasim/breakeven.hpp"
#include "cocoasim/config.hpp"
#include "cocoasim/core.hpp"
#include "cocoasim/csv.hpp"
#include "cocoasim/errors.hpp"
#include "cocoasim/income.hpp"
#include "cocoasim/market.hpp"
#include "cocoasim/replicate.hpp"
#include "cocoasim/report.hpp"
#include "cocoasim/trials.hpp"
#include "cocoasim/winwin.hpp"
#include "cocoasim/yield.hpp"
