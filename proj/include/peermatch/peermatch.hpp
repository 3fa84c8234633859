#pragma once

// Reciprocal learner-matching engine: profile/preference model, taxonomy
// similarity, pairwise distance scoring, reciprocal ranking, evaluation
// metrics, synthetic population generation and flat-file I/O.

#include "peermatch/core.hpp"
#include "peermatch/datagen.hpp"
#include "peermatch/distance.hpp"
#include "peermatch/errors.hpp"
#include "peermatch/eval.hpp"
#include "peermatch/io.hpp"
#include "peermatch/locations.hpp"
#include "peermatch/preferences.hpp"
#include "peermatch/profiles.hpp"
#include "peermatch/ranker.hpp"
#include "peermatch/taxonomy.hpp"
