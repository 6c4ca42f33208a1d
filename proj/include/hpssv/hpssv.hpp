#pragma once

#include "hpssv/errors.hpp"
#include "hpssv/io.hpp"
#include "hpssv/measures.hpp"
#include "hpssv/oracle.hpp"
#include "hpssv/reservoir.hpp"
#include "hpssv/specfun.hpp"
#include "hpssv/state.hpp"
#include "hpssv/sweep.hpp"
#include "hpssv/wigner.hpp"
