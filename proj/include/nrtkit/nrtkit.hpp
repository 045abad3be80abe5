#pragma once

#include "nrtkit/deghost.hpp"
#include "nrtkit/frt.hpp"
#include "nrtkit/ghost.hpp"
#include "nrtkit/io.hpp"
#include "nrtkit/modring.hpp"
#include "nrtkit/mojette.hpp"
#include "nrtkit/ntt.hpp"
#include "nrtkit/pgm.hpp"
#include "nrtkit/pixel_image.hpp"
