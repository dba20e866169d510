#pragma once

#include "bowlab/variety/moment.hpp"
#include "bowlab/variety/point.hpp"
#include "bowlab/variety/solve.hpp"
#include "bowlab/variety/stability.hpp"
#include "bowlab/variety/structure.hpp"
