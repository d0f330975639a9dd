#pragma once

#include "qcdet/capacities.hpp"
#include "qcdet/channel.hpp"
#include "qcdet/channel_io.hpp"
#include "qcdet/complex_matrix.hpp"
#include "qcdet/detection.hpp"
#include "qcdet/entropy.hpp"
#include "qcdet/golden_section.hpp"
#include "qcdet/hermitian_eig.hpp"
#include "qcdet/operators.hpp"
#include "qcdet/shotsim.hpp"
#include "qcdet/sweep.hpp"
#include "qcdet/version.hpp"
