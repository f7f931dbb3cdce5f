#pragma once

#include "incl/classify.hpp"
#include "incl/cqa.hpp"
#include "incl/errors.hpp"
#include "incl/formula.hpp"
#include "incl/game.hpp"
#include "incl/io.hpp"
#include "incl/model.hpp"
#include "incl/msm.hpp"
#include "incl/reductions.hpp"
#include "incl/semantics.hpp"
#include "incl/team.hpp"
#include "incl/tclogic.hpp"
#include "incl/value.hpp"
