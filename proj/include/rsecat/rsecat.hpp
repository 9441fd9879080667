#pragma once
// Umbrella header: the whole library, parser and report renderers.

#include "rsecat/dsl.hpp"
#include "rsecat/report.hpp"
#include "rsecat/secat.hpp"
