#pragma once

#include "ttpos/curve.hpp"
#include "ttpos/errors.hpp"
#include "ttpos/gen.hpp"
#include "ttpos/homotopy.hpp"
#include "ttpos/io.hpp"
#include "ttpos/pipelines.hpp"
#include "ttpos/quarter.hpp"
#include "ttpos/snippet.hpp"
#include "ttpos/track.hpp"
#include "ttpos/track_io.hpp"
#include "ttpos/verify.hpp"
