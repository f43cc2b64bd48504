#pragma once

#include "core_physics.hpp"
#include "event_io.hpp"
#include "laser_loop.hpp"
#include "random.hpp"
#include "renewal.hpp"
#include "tdse.hpp"
#include "two_level.hpp"
