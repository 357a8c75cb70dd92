/// @file stokeslab.hpp
/// @brief Umbrella header.
#pragma once

#include "counterexample.hpp"
#include "div_solver.hpp"
#include "io.hpp"
#include "localization.hpp"
