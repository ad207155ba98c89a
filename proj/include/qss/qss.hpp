#pragma once

#include "qss/access_structure.hpp"
#include "qss/cone.hpp"
#include "qss/csirmaz.hpp"
#include "qss/json_io.hpp"
#include "qss/linear_form.hpp"
#include "qss/player_set.hpp"
#include "qss/prover.hpp"
#include "qss/rational.hpp"
#include "qss/simplex.hpp"
