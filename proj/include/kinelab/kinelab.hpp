#pragma once

#include "kinelab/fibration.hpp"
#include "kinelab/gen_complex.hpp"
#include "kinelab/kinematics.hpp"
#include "kinelab/matrix.hpp"
#include "kinelab/projective.hpp"
#include "kinelab/quaternion.hpp"
#include "kinelab/verify.hpp"
