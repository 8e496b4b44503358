#pragma once

// Generalized ROC analysis for real-valued outcomes: ROC curves and movies,
// UROC curves, CPA, and related rank-association measures.

#include "uroc/assoc.hpp"
#include "uroc/cpa.hpp"
#include "uroc/csv.hpp"
#include "uroc/error.hpp"
#include "uroc/frame_export.hpp"
#include "uroc/gaussian.hpp"
#include "uroc/movie.hpp"
#include "uroc/report.hpp"
#include "uroc/roc.hpp"
#include "uroc/sample.hpp"
#include "uroc/svg.hpp"
#include "uroc/uroc_curve.hpp"
#include "uroc/weights.hpp"
