#pragma once

#include "cluster.hpp"
#include "explorer.hpp"
#include "export.hpp"
#include "int_matrix.hpp"
#include "json_io.hpp"
#include "mutation.hpp"
#include "periodic_function.hpp"
#include "quiver.hpp"
#include "rational.hpp"
#include "roots.hpp"
#include "tree.hpp"
