#ifndef SQINT_SQINT_HPP
#define SQINT_SQINT_HPP

#include "sqint/error.hpp"
#include "sqint/gaussian.hpp"
#include "sqint/moments.hpp"
#include "sqint/interferometer.hpp"
#include "sqint/roots.hpp"
#include "sqint/resolution.hpp"
#include "sqint/fock.hpp"
#include "sqint/io.hpp"
#include "sqint/commands.hpp"

#endif  // SQINT_SQINT_HPP
