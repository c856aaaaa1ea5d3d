#pragma once

#include "frameop/error.hpp"
#include "frameop/frame.hpp"
#include "frameop/generators.hpp"
#include "frameop/io.hpp"
#include "frameop/linalg.hpp"
#include "frameop/oprep.hpp"
#include "frameop/solver.hpp"
#include "frameop/verify.hpp"
