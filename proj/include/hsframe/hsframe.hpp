#pragma once

#include "hsframe/classical_identities.hpp"
#include "hsframe/errors.hpp"
#include "hsframe/frame_gen.hpp"
#include "hsframe/hs_frame.hpp"
#include "hsframe/identity_suite.hpp"
#include "hsframe/operator_core.hpp"
#include "hsframe/random.hpp"
#include "hsframe/serialization.hpp"
#include "hsframe/subset.hpp"
#include "hsframe/sweep.hpp"
#include "hsframe/vector_frame.hpp"
