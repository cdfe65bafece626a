// SPDX-FileCopyrightText: (c) 2026 The winseq authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "winseq/boundaries.hpp"
#include "winseq/trial_sim.hpp"

// Machine-readable reports. Field order is fixed and every real number is
// rounded to 6 significant digits, so identical inputs give identical bytes.
// Wall-clock runtimes are deliberately left out of these documents.
namespace winseq {

double round_significant(double value, int digits = 6);

std::string design_json(const GroupSequentialDesign& design);

std::string analysis_json(const SequentialAnalysis& analysis,
                          const GroupSequentialDesign& design,
                          const HierarchySpec& hierarchy,
                          const AnalysisOptions& options);

std::string type1_json(const Type1Report& report);

// One row per replicate and look.
std::string type1_records_csv(const Type1Report& report);

std::string increments_json(const IncrementCheckReport& report);

std::string sim_config_json(const TrialSimConfig& config);

}  // namespace winseq
