#pragma once

#include "qdarwin/channel.hpp"
#include "qdarwin/darwin.hpp"
#include "qdarwin/errors.hpp"
#include "qdarwin/information.hpp"
#include "qdarwin/kernels.hpp"
#include "qdarwin/layout.hpp"
#include "qdarwin/models.hpp"
#include "qdarwin/povm.hpp"
#include "qdarwin/random.hpp"
#include "qdarwin/state.hpp"
