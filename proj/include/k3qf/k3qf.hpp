#pragma once

#include "k3qf/arith.hpp"
#include "k3qf/error.hpp"
#include "k3qf/lattice.hpp"
#include "k3qf/linalg.hpp"
#include "k3qf/matrix.hpp"
#include "k3qf/period.hpp"
#include "k3qf/quadspace.hpp"
