#pragma once

#include "qpl/field.hpp"
#include "qpl/matrix.hpp"
#include "qpl/subspace.hpp"
#include "qpl/lattice.hpp"
#include "qpl/qpolymatroid.hpp"
#include "qpl/equivalence.hpp"
#include "qpl/codes.hpp"
#include "qpl/independence.hpp"
#include "qpl/cryptomorphism.hpp"
#include "qpl/fixtures.hpp"
#include "qpl/registry.hpp"
