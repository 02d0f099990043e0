#ifndef BDALLOC_BDALLOC_HPP
#define BDALLOC_BDALLOC_HPP

#include "bdalloc/bottleneck.hpp"
#include "bdalloc/errors.hpp"
#include "bdalloc/fairness.hpp"
#include "bdalloc/flow.hpp"
#include "bdalloc/graph.hpp"
#include "bdalloc/mechanism.hpp"
#include "bdalloc/oracle.hpp"
#include "bdalloc/rational.hpp"

#endif  // BDALLOC_BDALLOC_HPP
