#pragma once

#include "modcato/rootdata.hpp"
#include "modcato/charring.hpp"
#include "modcato/cache.hpp"
#include "modcato/hypalg.hpp"
#include "modcato/topology.hpp"
#include "modcato/cat_o.hpp"
#include "modcato/periodicity.hpp"
#include "modcato/serialize.hpp"
