#pragma once

#include "omegares/constants.hpp"
#include "omegares/designer.hpp"
#include "omegares/errors.hpp"
#include "omegares/fields.hpp"
#include "omegares/fitlab.hpp"
#include "omegares/hermitian_eigen.hpp"
#include "omegares/levmar.hpp"
#include "omegares/nvphys.hpp"
#include "omegares/optics.hpp"
#include "omegares/report.hpp"
#include "omegares/resnet.hpp"
#include "omegares/sparams.hpp"
#include "omegares/tables.hpp"
#include "omegares/touchstone.hpp"
#include "omegares/txline.hpp"
#include "omegares/units.hpp"
