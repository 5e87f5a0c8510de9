#pragma once

#include "surf4/errors.hpp"
#include "surf4/expr.hpp"
#include "surf4/forms.hpp"
#include "surf4/frame.hpp"
#include "surf4/jet.hpp"
#include "surf4/msc.hpp"
#include "surf4/octet.hpp"
#include "surf4/profile.hpp"
#include "surf4/rotation.hpp"
#include "surf4/rotational.hpp"
#include "surf4/surface.hpp"
#include "surf4/vec4.hpp"
