#ifndef ECSENSE_ECSENSE_HPP
#define ECSENSE_ECSENSE_HPP

#include "ecsense/ecs_state.hpp"
#include "ecsense/lossless_qfi.hpp"
#include "ecsense/lossy_model.hpp"
#include "ecsense/intensity.hpp"
#include "ecsense/fock_oracle.hpp"
#include "ecsense/tables.hpp"
#include "ecsense/sweep.hpp"
#include "ecsense/verify.hpp"

#endif  // ECSENSE_ECSENSE_HPP
