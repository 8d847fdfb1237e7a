#pragma once

#include <absnorm/bgp_sum.hpp>
#include <absnorm/bisect.hpp>
#include <absnorm/boundary.hpp>
#include <absnorm/dual.hpp>
#include <absnorm/error.hpp>
#include <absnorm/finite_space.hpp>
#include <absnorm/norm.hpp>
#include <absnorm/parse.hpp>
#include <absnorm/support.hpp>
#include <absnorm/tolerances.hpp>
#include <absnorm/tri.hpp>
#include <absnorm/validate.hpp>
