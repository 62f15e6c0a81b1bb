/*!
  \file ecx.hpp
  \brief Includes the whole library
*/

#pragma once

#include "errors.hpp"
#include "truth_table.hpp"
#include "circuit.hpp"
#include "simulate.hpp"
#include "rewrite.hpp"
#include "netlist.hpp"
#include "decision_tree.hpp"
#include "measures.hpp"
#include "compilers.hpp"
#include "analysis.hpp"
