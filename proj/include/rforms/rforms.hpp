#pragma once

#include "rforms/intlinalg.hpp"
#include "rforms/rootdatum.hpp"
#include "rforms/weyl.hpp"
#include "rforms/tits.hpp"
#include "rforms/fiber.hpp"
#include "rforms/kgb.hpp"
#include "rforms/zspace.hpp"
#include "rforms/session.hpp"
