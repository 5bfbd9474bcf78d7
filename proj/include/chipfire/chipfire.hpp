#pragma once

#include "chipfire/configuration.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/enumeration.hpp"
#include "chipfire/error.hpp"
#include "chipfire/families.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/io.hpp"
#include "chipfire/orientation.hpp"
#include "chipfire/rank.hpp"
#include "chipfire/reduction.hpp"
