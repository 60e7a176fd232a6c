#pragma once

#include "homcheck/algebra.hpp"
#include "homcheck/choi.hpp"
#include "homcheck/entropy.hpp"
#include "homcheck/error.hpp"
#include "homcheck/io.hpp"
#include "homcheck/linmap.hpp"
#include "homcheck/randgen.hpp"
#include "homcheck/refuter.hpp"
#include "homcheck/report.hpp"
#include "homcheck/spectral.hpp"
#include "homcheck/verify.hpp"
