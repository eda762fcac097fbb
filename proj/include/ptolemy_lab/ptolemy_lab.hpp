#pragma once

#include "ptolemy_lab/angles.hpp"
#include "ptolemy_lab/completion.hpp"
#include "ptolemy_lab/io.hpp"
#include "ptolemy_lab/metric_space.hpp"
#include "ptolemy_lab/model_spaces.hpp"
#include "ptolemy_lab/norms.hpp"
#include "ptolemy_lab/parallel.hpp"
#include "ptolemy_lab/ptolemy.hpp"
#include "ptolemy_lab/quadruples.hpp"
#include "ptolemy_lab/random.hpp"
#include "ptolemy_lab/scalar.hpp"
