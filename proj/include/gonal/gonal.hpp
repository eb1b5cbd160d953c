#pragma once

// umbrella header

#include "constants_io.hpp"
#include "constructive.hpp"
#include "core.hpp"
#include "errors.hpp"
#include "int128.hpp"
#include "minimality.hpp"
#include "oracle.hpp"
#include "tables.hpp"
