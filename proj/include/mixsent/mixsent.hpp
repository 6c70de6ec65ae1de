#pragma once

#include "mixsent/augment.hpp"
#include "mixsent/cli.hpp"
#include "mixsent/corpus.hpp"
#include "mixsent/error.hpp"
#include "mixsent/eval.hpp"
#include "mixsent/features.hpp"
#include "mixsent/lexicon.hpp"
#include "mixsent/nb.hpp"
#include "mixsent/pipeline.hpp"
#include "mixsent/types.hpp"
