#pragma once

#include "pagen/analysis.hpp"
#include "pagen/bench.hpp"
#include "pagen/errors.hpp"
#include "pagen/graph.hpp"
#include "pagen/index.hpp"
#include "pagen/models.hpp"
#include "pagen/preference.hpp"
#include "pagen/rng.hpp"
#include "pagen/io.hpp"
