#pragma once

#include "crown/errors.hpp"
#include "crown/scalar.hpp"
#include "crown/matrix.hpp"
#include "crown/signs.hpp"
#include "crown/graph.hpp"
#include "crown/crown_graphs.hpp"
#include "crown/graph_algebra.hpp"
#include "crown/loday.hpp"
#include "crown/representations.hpp"
#include "crown/io.hpp"
#include "crown/harness.hpp"
