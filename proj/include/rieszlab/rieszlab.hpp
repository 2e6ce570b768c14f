#ifndef RIESZLAB_RIESZLAB_HPP
#define RIESZLAB_RIESZLAB_HPP

#include "rieszlab/algebra.hpp"
#include "rieszlab/beta_riesz.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/riesz.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/specfun.hpp"
#include "rieszlab/spectral.hpp"
#include "rieszlab/verify.hpp"

#endif
