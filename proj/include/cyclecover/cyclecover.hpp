#pragma once

#include "cyclecover/core.hpp"
#include "cyclecover/error.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/harness.hpp"
#include "cyclecover/instances.hpp"
#include "cyclecover/io.hpp"
#include "cyclecover/lemmas.hpp"
#include "cyclecover/oracle.hpp"
#include "cyclecover/rng.hpp"
#include "cyclecover/solvers.hpp"
