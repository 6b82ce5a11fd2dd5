#pragma once

#include "ptspec/contour.hpp"
#include "ptspec/errors.hpp"
#include "ptspec/io.hpp"
#include "ptspec/liouville.hpp"
#include "ptspec/models.hpp"
#include "ptspec/oracle.hpp"
#include "ptspec/specfun.hpp"
#include "ptspec/spectra.hpp"
#include "ptspec/wavefun.hpp"
