#pragma once

#include "nrsched/bench.hpp"
#include "nrsched/constant_q_ptas.hpp"
#include "nrsched/core.hpp"
#include "nrsched/cover_fptas.hpp"
#include "nrsched/errors.hpp"
#include "nrsched/exact.hpp"
#include "nrsched/general_ptas.hpp"
#include "nrsched/greedy.hpp"
#include "nrsched/instance.hpp"
#include "nrsched/io.hpp"
#include "nrsched/rational.hpp"
#include "nrsched/shift_cover.hpp"
#include "nrsched/unit.hpp"
#include "nrsched/unknown.hpp"
