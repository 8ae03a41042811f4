#pragma once

#include "stframe/errors.hpp"
#include "stframe/tensor.hpp"
#include "stframe/sources.hpp"
#include "stframe/analysis.hpp"
#include "stframe/cases.hpp"
#include "stframe/eigen.hpp"
#include "stframe/trig_fit.hpp"
#include "stframe/st_basis.hpp"
#include "stframe/topology.hpp"
#include "stframe/gallery.hpp"
#include "stframe/spec_io.hpp"
