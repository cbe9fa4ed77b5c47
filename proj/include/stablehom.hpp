#ifndef STABLEHOM_HPP
#define STABLEHOM_HPP

#include "stablehom/error.hpp"
#include "stablehom/exactla.hpp"
#include "stablehom/algmod.hpp"
#include "stablehom/chaincx.hpp"
#include "stablehom/resolve.hpp"
#include "stablehom/semidual.hpp"
#include "stablehom/towers.hpp"
#include "stablehom/storengine.hpp"
#include "stablehom/io.hpp"
#include "stablehom/verify.hpp"
#include "stablehom/report.hpp"

#endif  // STABLEHOM_HPP
