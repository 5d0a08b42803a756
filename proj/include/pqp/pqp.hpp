#pragma once

#include "pqp/corpus.hpp"
#include "pqp/enumerate.hpp"
#include "pqp/error.hpp"
#include "pqp/group_view.hpp"
#include "pqp/pc_group.hpp"
#include "pqp/predicates.hpp"
#include "pqp/presentation.hpp"
#include "pqp/quotient.hpp"
#include "pqp/subgroup.hpp"
#include "pqp/sweep.hpp"
#include "pqp/theorems.hpp"
