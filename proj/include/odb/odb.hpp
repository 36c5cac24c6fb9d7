#ifndef ODB_ODB_HPP
#define ODB_ODB_HPP

#include "odb/cdf.hpp"
#include "odb/config.hpp"
#include "odb/disorder.hpp"
#include "odb/error.hpp"
#include "odb/experiments.hpp"
#include "odb/fredholm.hpp"
#include "odb/growth.hpp"
#include "odb/limits.hpp"
#include "odb/numeric.hpp"
#include "odb/parallel.hpp"
#include "odb/paths.hpp"
#include "odb/quenched.hpp"
#include "odb/rng.hpp"
#include "odb/stats.hpp"

#endif // ODB_ODB_HPP
