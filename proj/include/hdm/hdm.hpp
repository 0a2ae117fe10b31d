#pragma once

#include "hdm/centrality.hpp"
#include "hdm/direct_measures.hpp"
#include "hdm/error.hpp"
#include "hdm/evaluation.hpp"
#include "hdm/expansion.hpp"
#include "hdm/generators.hpp"
#include "hdm/graph_measures.hpp"
#include "hdm/hypergraph.hpp"
#include "hdm/io.hpp"
#include "hdm/measure.hpp"
#include "hdm/parallel.hpp"
#include "hdm/random.hpp"
#include "hdm/stats.hpp"
#include "hdm/tensor.hpp"
#include "hdm/tensor_spectra.hpp"

namespace hdm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hdm
