#pragma once

#include "ultrasmall/rng.hpp"
#include "ultrasmall/parallel.hpp"
#include "ultrasmall/degree_sequence.hpp"
#include "ultrasmall/multigraph.hpp"
#include "ultrasmall/cm_generator.hpp"
#include "ultrasmall/pam_generator.hpp"
#include "ultrasmall/graph_metrics.hpp"
#include "ultrasmall/theory_bounds.hpp"
#include "ultrasmall/structure_analysis.hpp"
#include "ultrasmall/experiment.hpp"
