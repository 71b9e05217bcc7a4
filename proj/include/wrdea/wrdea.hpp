#pragma once

#include "wrdea/battery.hpp"
#include "wrdea/check.hpp"
#include "wrdea/data.hpp"
#include "wrdea/envelopment.hpp"
#include "wrdea/io.hpp"
#include "wrdea/lp.hpp"
#include "wrdea/oracle.hpp"
#include "wrdea/pipeline.hpp"
#include "wrdea/reference.hpp"
#include "wrdea/rts.hpp"
#include "wrdea/types.hpp"
