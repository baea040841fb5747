// Umbrella header.
#pragma once

#include "besov.hpp"
#include "core.hpp"
#include "dyadic.hpp"
#include "estimates.hpp"
#include "fft.hpp"
#include "forcing.hpp"
#include "io.hpp"
#include "norms.hpp"
#include "oseen.hpp"
#include "paraproduct.hpp"
#include "picard.hpp"
#include "rng.hpp"
#include "transforms.hpp"
