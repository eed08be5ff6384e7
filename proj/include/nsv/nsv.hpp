#pragma once

#include "nsv/config.hpp"
#include "nsv/datum.hpp"
#include "nsv/diagnostics.hpp"
#include "nsv/error.hpp"
#include "nsv/interpolants.hpp"
#include "nsv/lattice.hpp"
#include "nsv/nonlinearity.hpp"
#include "nsv/oracle.hpp"
#include "nsv/parallel.hpp"
#include "nsv/pressure.hpp"
#include "nsv/projection.hpp"
#include "nsv/quadrature.hpp"
#include "nsv/report.hpp"
#include "nsv/snapshot.hpp"
#include "nsv/spectral_field.hpp"
#include "nsv/stepper.hpp"
#include "nsv/sweep.hpp"
#include "nsv/test_function.hpp"
#include "nsv/transform.hpp"
#include "nsv/trig_polynomial.hpp"
