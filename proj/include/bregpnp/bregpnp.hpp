#pragma once

#include "bregpnp/bregman_prox.hpp"
#include "bregpnp/denoiser.hpp"
#include "bregpnp/errors.hpp"
#include "bregpnp/experiment.hpp"
#include "bregpnp/fidelity.hpp"
#include "bregpnp/image.hpp"
#include "bregpnp/image_io.hpp"
#include "bregpnp/kernel.hpp"
#include "bregpnp/linear_operator.hpp"
#include "bregpnp/metrics.hpp"
#include "bregpnp/random.hpp"
#include "bregpnp/reference_function.hpp"
#include "bregpnp/report.hpp"
#include "bregpnp/solver.hpp"
#include "bregpnp/theorem.hpp"
