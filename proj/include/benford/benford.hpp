#pragma once

#include "core.hpp"
#include "construct.hpp"
#include "dualbase.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "io.hpp"
#include "montecarlo.hpp"
#include "parallel.hpp"
#include "seeds.hpp"
#include "wrapped_pdf.hpp"
