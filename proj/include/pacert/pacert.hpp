#pragma once

#include "pacert/numeric.hpp"
#include "pacert/spine_model.hpp"
#include "pacert/twist_region.hpp"
#include "pacert/spectral.hpp"
#include "pacert/bounds.hpp"
#include "pacert/mcg_words.hpp"
#include "pacert/volume_ledger.hpp"
#include "pacert/corpus.hpp"
#include "pacert/io.hpp"
#include "pacert/sweep.hpp"
