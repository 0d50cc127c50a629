#pragma once

#include "qtor/common.hpp"
#include "qtor/fock.hpp"
#include "qtor/laurent.hpp"
#include "qtor/lattice.hpp"
#include "qtor/mpoly.hpp"
#include "qtor/parallel.hpp"
#include "qtor/qrat.hpp"
#include "qtor/relations.hpp"
#include "qtor/series.hpp"
#include "qtor/serre_polynomials.hpp"
#include "qtor/vertex.hpp"
