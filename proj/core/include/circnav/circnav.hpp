#pragma once

#include "circnav/analysis.hpp"
#include "circnav/circle_fit.hpp"
#include "circnav/control.hpp"
#include "circnav/dynamics.hpp"
#include "circnav/errors.hpp"
#include "circnav/experiments.hpp"
#include "circnav/geometry.hpp"
#include "circnav/random.hpp"
