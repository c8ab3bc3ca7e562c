#pragma once

#include "parmem/errors.hpp"
#include "parmem/harness/enumerate.hpp"
#include "parmem/harness/experiment.hpp"
#include "parmem/harness/results.hpp"
#include "parmem/harness/trial.hpp"
#include "parmem/model.hpp"
#include "parmem/noise.hpp"
#include "parmem/operator_oracle.hpp"
#include "parmem/pattern_io.hpp"
#include "parmem/rng.hpp"
#include "parmem/theory.hpp"
