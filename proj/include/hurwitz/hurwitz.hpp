#pragma once

// Hurwitz stability of column reduced complex matrix polynomials via
// Markov parameters and rectangular block Hankel matrices.

#include "hurwitz/bezout.hpp"
#include "hurwitz/eig_oracle.hpp"
#include "hurwitz/errors.hpp"
#include "hurwitz/hankel.hpp"
#include "hurwitz/io.hpp"
#include "hurwitz/markov.hpp"
#include "hurwitz/matpoly.hpp"
#include "hurwitz/normalize.hpp"
#include "hurwitz/perturb.hpp"
#include "hurwitz/split.hpp"
#include "hurwitz/stability.hpp"
