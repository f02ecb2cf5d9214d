#pragma once

// Umbrella header.

#include "mcmod/fields.hpp"
#include "mcmod/matrix.hpp"
#include "mcmod/graded_algebra.hpp"
#include "mcmod/cochain.hpp"
#include "mcmod/gpoly.hpp"
#include "mcmod/derived.hpp"
#include "mcmod/stability.hpp"
#include "mcmod/hilbert.hpp"
#include "mcmod/io.hpp"
#include "mcmod/scan.hpp"
#include "mcmod/version.hpp"
