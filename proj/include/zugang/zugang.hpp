#ifndef ZUGANG_ZUGANG_HPP
#define ZUGANG_ZUGANG_HPP

#include "zugang/annotation.hpp"
#include "zugang/config.hpp"
#include "zugang/engine.hpp"
#include "zugang/eval.hpp"
#include "zugang/extract.hpp"
#include "zugang/gazetteer.hpp"
#include "zugang/lexicon_matcher.hpp"
#include "zugang/rules.hpp"
#include "zugang/synonyms.hpp"
#include "zugang/text.hpp"

#endif  // ZUGANG_ZUGANG_HPP
