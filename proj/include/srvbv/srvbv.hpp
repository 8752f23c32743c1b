#pragma once

#include "srvbv/curve.hpp"
#include "srvbv/gtransform.hpp"
#include "srvbv/io.hpp"
#include "srvbv/matching.hpp"
#include "srvbv/measure.hpp"
#include "srvbv/oracle.hpp"
#include "srvbv/relax.hpp"
#include "srvbv/srvt.hpp"
#include "srvbv/svg.hpp"
