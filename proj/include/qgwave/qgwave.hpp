#pragma once

#include "qgwave/channel.hpp"
#include "qgwave/errors.hpp"
#include "qgwave/example_flows.hpp"
#include "qgwave/geo_params.hpp"
#include "qgwave/golden.hpp"
#include "qgwave/json_io.hpp"
#include "qgwave/profiles.hpp"
#include "qgwave/rayleigh_kuo.hpp"
#include "qgwave/sturm.hpp"
#include "qgwave/wave_classifier.hpp"
