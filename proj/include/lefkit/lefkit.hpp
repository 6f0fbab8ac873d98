#pragma once

#include "lefkit/abelian.hpp"
#include "lefkit/errors.hpp"
#include "lefkit/fpgroups.hpp"
#include "lefkit/groups.hpp"
#include "lefkit/partial.hpp"
#include "lefkit/search.hpp"
#include "lefkit/words.hpp"
