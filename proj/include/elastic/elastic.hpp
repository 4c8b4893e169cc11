#pragma once

#include "elastic/adaptive/controller.hpp"
#include "elastic/bc/oracle.hpp"
#include "elastic/bc/tasks.hpp"
#include "elastic/exec/local_executor.hpp"
#include "elastic/exec/overhead.hpp"
#include "elastic/exec/serverless_executor.hpp"
#include "elastic/faas/synthetic_executor.hpp"
#include "elastic/mandel/driver.hpp"
#include "elastic/mandel/pgm.hpp"
#include "elastic/metrics/characterization.hpp"
#include "elastic/metrics/cost.hpp"
#include "elastic/sched/hybrid_executor.hpp"
#include "elastic/uts/driver.hpp"
#include "elastic/uts/subtree_cache.hpp"
