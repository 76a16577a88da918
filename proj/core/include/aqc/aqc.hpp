// aqc.hpp: umbrella header for the aqc core library

#pragma once

#include "aqc/bath.hpp"
#include "aqc/closed_forms.hpp"
#include "aqc/csv_io.hpp"
#include "aqc/errors.hpp"
#include "aqc/fitting.hpp"
#include "aqc/kinetics.hpp"
#include "aqc/ode.hpp"
#include "aqc/oracle.hpp"
#include "aqc/quadrature.hpp"
#include "aqc/schedule.hpp"
