#pragma once

#include "spp/constants.hpp"
#include "spp/emitters.hpp"
#include "spp/errors.hpp"
#include "spp/layered_green.hpp"
#include "spp/material.hpp"
#include "spp/numerics.hpp"
#include "spp/spp_tensor.hpp"
#include "spp/types.hpp"
#include "spp/version.hpp"
