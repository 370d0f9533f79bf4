#pragma once

#include "entemd/errors.hpp"
#include "entemd/time_series.hpp"
#include "entemd/synth.hpp"
#include "entemd/series_io.hpp"
#include "entemd/spline.hpp"
#include "entemd/emd.hpp"
#include "entemd/pentropy.hpp"
#include "entemd/mixfix.hpp"
#include "entemd/serialize.hpp"
