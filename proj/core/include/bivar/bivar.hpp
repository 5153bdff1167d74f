#pragma once

// Umbrella header: the whole public surface.

#include <bivar/builtins.hpp>
#include <bivar/convolution.hpp>
#include <bivar/errors.hpp>
#include <bivar/euler.hpp>
#include <bivar/fn2.hpp>
#include <bivar/harness.hpp>
#include <bivar/int128.hpp>
#include <bivar/kahan.hpp>
#include <bivar/rational.hpp>
#include <bivar/sieve.hpp>
#include <bivar/summation.hpp>
