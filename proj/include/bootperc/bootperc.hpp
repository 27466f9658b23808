#pragma once

#include "bootperc/bootstrap.hpp"
#include "bootperc/constructions.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/extended_count.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/graph_io.hpp"
#include "bootperc/ore.hpp"
#include "bootperc/random.hpp"
#include "bootperc/random_graphs.hpp"
#include "bootperc/report.hpp"
#include "bootperc/solver.hpp"
#include "bootperc/subsets.hpp"
#include "bootperc/suites.hpp"
#include "bootperc/vertex_set.hpp"
