#pragma once

#include "athermal/core.hpp"
#include "athermal/esets.hpp"
#include "athermal/majorization.hpp"
#include "athermal/monotones.hpp"
#include "athermal/oracle.hpp"
#include "athermal/tempbounds.hpp"
#include "athermal/thermo.hpp"
