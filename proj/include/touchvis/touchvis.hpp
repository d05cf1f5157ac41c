#pragma once

#include "touchvis/aggregate.hpp"
#include "touchvis/config.hpp"
#include "touchvis/data.hpp"
#include "touchvis/engine.hpp"
#include "touchvis/error.hpp"
#include "touchvis/gesture.hpp"
#include "touchvis/history.hpp"
#include "touchvis/inspect.hpp"
#include "touchvis/io.hpp"
#include "touchvis/replay.hpp"
#include "touchvis/scale.hpp"
#include "touchvis/scene.hpp"
#include "touchvis/select.hpp"
#include "touchvis/view_state.hpp"
#include "touchvis/wire.hpp"
