#pragma once

#include "hlsplit/rational.hpp"
#include "hlsplit/matrix.hpp"
#include "hlsplit/subspace.hpp"
#include "hlsplit/filtration.hpp"
#include "hlsplit/hl_pair.hpp"
#include "hlsplit/splitting.hpp"
#include "hlsplit/graded_ring.hpp"
#include "hlsplit/kunneth.hpp"
