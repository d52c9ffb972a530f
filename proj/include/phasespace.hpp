// phasespace.hpp: umbrella header
#pragma once

#include "phasespace/types.hpp"
#include "phasespace/symplectic.hpp"
#include "phasespace/matrix_exp.hpp"
#include "phasespace/williamson.hpp"
#include "phasespace/gaussian_state.hpp"
#include "phasespace/dynamics.hpp"
#include "phasespace/normal_modes.hpp"
#include "phasespace/entropy.hpp"
#include "phasespace/wigner.hpp"
#include "phasespace/fock.hpp"
