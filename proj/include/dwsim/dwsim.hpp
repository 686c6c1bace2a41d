#pragma once

// umbrella header

#include "dof.hpp"
#include "entropy.hpp"
#include "fading.hpp"
#include "mutual_info.hpp"
#include "pam.hpp"
#include "rng.hpp"
#include "schemes.hpp"
#include "simulate.hpp"
#include "version.hpp"
