#pragma once

#include "covmin/bounds.hpp"
#include "covmin/families.hpp"
#include "covmin/hnf.hpp"
#include "covmin/interval.hpp"
#include "covmin/lattice.hpp"
#include "covmin/lp.hpp"
#include "covmin/minima_table.hpp"
#include "covmin/oracle/covering_radius.hpp"
#include "covmin/oracle/lattice_width.hpp"
#include "covmin/oracle/sandwich.hpp"
#include "covmin/oracle/successive_minima.hpp"
#include "covmin/polytope.hpp"
#include "covmin/rational.hpp"
#include "covmin/verify.hpp"
