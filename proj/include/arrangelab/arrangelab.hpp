#pragma once

#include "arrangelab/arrangement.hpp"
#include "arrangelab/critical.hpp"
#include "arrangelab/deformation.hpp"
#include "arrangelab/example.hpp"
#include "arrangelab/fiber.hpp"
#include "arrangelab/invariants.hpp"
#include "arrangelab/io.hpp"
#include "arrangelab/polynomial.hpp"
#include "arrangelab/render.hpp"
#include "arrangelab/report.hpp"
#include "arrangelab/types.hpp"
