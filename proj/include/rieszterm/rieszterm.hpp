// Umbrella header: the whole library.
#pragma once

#include "rieszterm/algebra.hpp"
#include "rieszterm/certify.hpp"
#include "rieszterm/coeff_expr.hpp"
#include "rieszterm/errors.hpp"
#include "rieszterm/eval.hpp"
#include "rieszterm/free_eq.hpp"
#include "rieszterm/interval.hpp"
#include "rieszterm/parse.hpp"
#include "rieszterm/piecewise_affine.hpp"
#include "rieszterm/print.hpp"
#include "rieszterm/random.hpp"
#include "rieszterm/rational.hpp"
#include "rieszterm/synthesis.hpp"
#include "rieszterm/term.hpp"
#include "rieszterm/witness.hpp"
