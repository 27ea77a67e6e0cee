#pragma once

#include "tnnfibers/error.hpp"
#include "tnnfibers/word.hpp"
#include "tnnfibers/coxeter.hpp"
#include "tnnfibers/demazure.hpp"
#include "tnnfibers/posets.hpp"
#include "tnnfibers/simplicial.hpp"
#include "tnnfibers/homology.hpp"
#include "tnnfibers/complexes.hpp"
#include "tnnfibers/tnn.hpp"
#include "tnnfibers/rewrite.hpp"
#include "tnnfibers/fiber.hpp"
#include "tnnfibers/sweep.hpp"
#include "tnnfibers/json_io.hpp"
