#pragma once

#include "techmap/community.hpp"
#include "techmap/corpus.hpp"
#include "techmap/corpus_io.hpp"
#include "techmap/diversification.hpp"
#include "techmap/errors.hpp"
#include "techmap/exporters.hpp"
#include "techmap/filtering.hpp"
#include "techmap/generator.hpp"
#include "techmap/linkage.hpp"
#include "techmap/network.hpp"
#include "techmap/overlay.hpp"
#include "techmap/planarity.hpp"
#include "techmap/proximity.hpp"
#include "techmap/rng.hpp"
