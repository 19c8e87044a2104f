#pragma once

#include "boxcover/rational.hpp"
#include "boxcover/geometry.hpp"
#include "boxcover/skeleton.hpp"
#include "boxcover/verifier.hpp"
#include "boxcover/transforms.hpp"
#include "boxcover/general_cover.hpp"
#include "boxcover/dim4_cover.hpp"
#include "boxcover/bounds.hpp"
#include "boxcover/certificate.hpp"
