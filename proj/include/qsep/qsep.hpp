#pragma once

#include "qsep/classifier.hpp"
#include "qsep/config.hpp"
#include "qsep/errors.hpp"
#include "qsep/fields.hpp"
#include "qsep/firstorder.hpp"
#include "qsep/grid.hpp"
#include "qsep/harmonic.hpp"
#include "qsep/hermite.hpp"
#include "qsep/jacobi.hpp"
#include "qsep/linalg.hpp"
#include "qsep/operators.hpp"
#include "qsep/oracle.hpp"
#include "qsep/params.hpp"
#include "qsep/profile.hpp"
