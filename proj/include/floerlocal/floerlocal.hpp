#pragma once

/**
 * @file floerlocal.hpp
 * @brief Umbrella header for the library (the CLI lives in cli.hpp).
 */

#include "floerlocal/complex.hpp"
#include "floerlocal/deduce.hpp"
#include "floerlocal/error.hpp"
#include "floerlocal/filtered.hpp"
#include "floerlocal/gf2.hpp"
#include "floerlocal/hat.hpp"
#include "floerlocal/knotlike.hpp"
#include "floerlocal/localequiv.hpp"
#include "floerlocal/mazur.hpp"
#include "floerlocal/obstructions.hpp"
#include "floerlocal/parallel.hpp"
#include "floerlocal/ring.hpp"
#include "floerlocal/standard.hpp"
