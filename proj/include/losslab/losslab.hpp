#ifndef LOSSLAB_LOSSLAB_HPP
#define LOSSLAB_LOSSLAB_HPP

#include "losslab/bounds.hpp"
#include "losslab/config.hpp"
#include "losslab/coupling.hpp"
#include "losslab/csv.hpp"
#include "losslab/distribution.hpp"
#include "losslab/erlang.hpp"
#include "losslab/errors.hpp"
#include "losslab/generator.hpp"
#include "losslab/metrics.hpp"
#include "losslab/order.hpp"
#include "losslab/params.hpp"
#include "losslab/product_form.hpp"
#include "losslab/replay.hpp"
#include "losslab/rng.hpp"
#include "losslab/sim.hpp"
#include "losslab/state.hpp"
#include "losslab/stationary.hpp"
#include "losslab/transitions.hpp"

#endif
