#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qcayley/config.hpp"
#include "qcayley/repring.hpp"

namespace qcayley {

struct CommandResult {
  std::string output;
  int exit_code = 0;
};

struct VerificationCase {
  std::string case_id;
  std::string params;
  double closed_form = 0.0;
  double measured = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

struct VerificationReport {
  std::vector<VerificationCase> cases;  // sorted by case_id
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

struct SuiteFactor {
  std::string label;
  FactorSpec factor;
  int sign;
};

// A_o(I_3), A_o(q=2), A_u(I_2).
std::vector<SuiteFactor> default_suite();
// The factors a verify run would use for this config.
std::vector<SuiteFactor> suite_for(const Config& cfg);
// Largest leg count the verify plan uses for local dimension n.
int verify_leg_budget(int n);

VerificationReport run_verification(const std::vector<SuiteFactor>& suite, std::size_t ambient_cap);

CommandResult cmd_tree(const Config& cfg);
CommandResult cmd_dims(const Config& cfg);
CommandResult cmd_norms(const Config& cfg);
CommandResult cmd_ao(const Config& cfg);
CommandResult cmd_kinf(const Config& cfg);
CommandResult cmd_verify(const Config& cfg);

// tree | dims | norms | kinf | verify | ao
CommandResult run_command(const Config& cfg, std::string_view command);

}  // namespace qcayley
