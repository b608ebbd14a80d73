#pragma once

#include "ionpnr/detector.h"
#include "ionpnr/errors.h"
#include "ionpnr/estimator.h"
#include "ionpnr/fluorescence.h"
#include "ionpnr/montecarlo.h"
#include "ionpnr/poisson.h"
#include "ionpnr/timing.h"
