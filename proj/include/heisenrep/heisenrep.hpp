#pragma once

// Umbrella header.

#include "heisenrep/error.hpp"
#include "heisenrep/ffield.hpp"
#include "heisenrep/cqalg.hpp"
#include "heisenrep/heis.hpp"
#include "heisenrep/swrep.hpp"
#include "heisenrep/ideal.hpp"
#include "heisenrep/pderiv.hpp"
#include "heisenrep/serialize.hpp"
#include "heisenrep/verify.hpp"
