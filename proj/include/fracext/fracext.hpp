#pragma once

#include "commands.hpp"
#include "complex.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "extension.hpp"
#include "families.hpp"
#include "funcalc.hpp"
#include "kernels.hpp"
#include "operators.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"
#include "table.hpp"
#include "verify.hpp"
