#pragma once

#include "kdlab/canonical.hpp"
#include "kdlab/deficiency.hpp"
#include "kdlab/enumerate.hpp"
#include "kdlab/errors.hpp"
#include "kdlab/extremal.hpp"
#include "kdlab/graph.hpp"
#include "kdlab/graph6.hpp"
#include "kdlab/kmatching.hpp"
#include "kdlab/spectral.hpp"
