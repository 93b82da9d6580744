#pragma once

#include "homlts/errors.hpp"
#include "homlts/field.hpp"
#include "homlts/linalg.hpp"
#include "homlts/multilinear.hpp"
#include "homlts/algebra.hpp"
#include "homlts/generators.hpp"
#include "homlts/representation.hpp"
#include "homlts/cohomology.hpp"
#include "homlts/extension.hpp"
#include "homlts/deformation.hpp"
