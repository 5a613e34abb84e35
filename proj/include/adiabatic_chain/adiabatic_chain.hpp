#pragma once

#include "adiabatic_chain/chain_model.hpp"
#include "adiabatic_chain/csv_io.hpp"
#include "adiabatic_chain/experiments.hpp"
#include "adiabatic_chain/fitting.hpp"
#include "adiabatic_chain/parallel.hpp"
#include "adiabatic_chain/propagator.hpp"
#include "adiabatic_chain/random.hpp"
#include "adiabatic_chain/spectral.hpp"
#include "adiabatic_chain/state.hpp"
#include "adiabatic_chain/sweep_result.hpp"
#include "adiabatic_chain/tridiagonal_eigensolver.hpp"
