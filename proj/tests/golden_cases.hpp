#pragma once
// CLI invocations whose output is frozen under tests/golden.

#include <string>
#include <vector>

struct Golden {
  std::string file;
  std::vector<std::string> args;
  int code;
};

inline const std::vector<Golden>& golden_cases() {
  static const std::vector<Golden> g = {
      {"mcat_s3.txt", {"mcat", "corpus/s3.cdga"}, 0},
      {"mcat_cp2_witness.txt", {"mcat", "corpus/cp2.cdga", "--witness"}, 0},
      {"mtc2_s2_witness.txt", {"mtc", "corpus/s2.cdga", "--n", "2", "--witness"}, 0},
      {"mtc3_s3.txt", {"mtc", "corpus/s3.cdga", "--n", "3"}, 0},
      {"mcat_s2_free.txt", {"mcat", "corpus/s2_free.cdga"}, 0},
      {"msecat_eps_witness.txt", {"msecat", "corpus/s3_path.cdga", "--model", "eps", "--witness"}, 0},
      {"msecat_mu_join.txt",
       {"msecat", "corpus/s2_mu2.cdga", "--model", "mu", "--section", "incl", "--route", "join"}, 0},
      {"additivity_mtc2_s2_s3.txt", {"additivity", "corpus/s2.cdga", "corpus/s3.cdga", "--invariant", "mtc:2"}, 0},
      {"subadditivity_mcat_s3_s3.txt",
       {"additivity", "corpus/s3.cdga", "corpus/s3.cdga", "--invariant", "mcat", "--subadditivity"}, 0},
      {"mcat_cp1.json", {"mcat", "corpus/cp1.cdga", "--format", "json"}, 0},
      {"mtc2_s3xs3.json", {"mtc", "corpus/s3xs3.cdga", "--n", "2", "--format", "json"}, 0},
      {"mcat_cp3_undetermined.txt", {"mcat", "corpus/cp3.cdga", "--max-m", "1"}, 2},
      {"print_s2_mu2.txt", {"print", "corpus/s2_mu2.cdga"}, 0},
      {"corpus.txt", {"corpus"}, 0},
  };
  return g;
}

