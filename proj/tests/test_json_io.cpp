#include <catch2/catch_amalgamated.hpp>

#include "tropicurve/json_io.hpp"
