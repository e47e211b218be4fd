#pragma once

#include "geoecc/capability.hpp"
#include "geoecc/codes.hpp"
#include "geoecc/domains.hpp"
#include "geoecc/error.hpp"
#include "geoecc/height.hpp"
#include "geoecc/height_closed.hpp"
#include "geoecc/height_lp.hpp"
#include "geoecc/height_search.hpp"
#include "geoecc/json_io.hpp"
#include "geoecc/lp.hpp"
#include "geoecc/verify.hpp"
