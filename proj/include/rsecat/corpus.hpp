#pragma once
// Built-in model corpus. The texts are identical to the files under corpus/.

#include <string>
#include <string_view>
#include <vector>

#include "rsecat/errors.hpp"

namespace rsecat {

struct CorpusFile {
  std::string_view name;
  std::string_view text;
};

inline const std::vector<CorpusFile>& corpus_files() {
  static const std::vector<CorpusFile> files{
      {"cp1.cdga", R"cdga(# complex projective 1-space, cohomology presentation
algebra CP1
generator x degree 2
relation x^2 = 0
)cdga"},
      {"cp1_free.cdga", R"cdga(# minimal model of complex projective 1-space
algebra CP1free
generator x degree 2
generator y degree 3
d y = x^2
)cdga"},
      {"cp2.cdga", R"cdga(# complex projective 2-space, cohomology presentation
algebra CP2
generator x degree 2
relation x^3 = 0
)cdga"},
      {"cp2_free.cdga", R"cdga(# minimal model of complex projective 2-space
algebra CP2free
generator x degree 2
generator y degree 5
d y = x^3
)cdga"},
      {"cp3.cdga", R"cdga(# complex projective 3-space, cohomology presentation
algebra CP3
generator x degree 2
relation x^4 = 0
)cdga"},
      {"cp3_free.cdga", R"cdga(# minimal model of complex projective 3-space
algebra CP3free
generator x degree 2
generator y degree 7
d y = x^4
)cdga"},
      {"s2.cdga", R"cdga(# rational 2-sphere, cohomology presentation
algebra S2
generator x degree 2
relation x^2 = 0
)cdga"},
      {"s2_free.cdga", R"cdga(# minimal model of the 2-sphere; not finite-dimensional, so values are window-certified
algebra S2free
generator x degree 2
generator y degree 3
d y = x^2
)cdga"},
      {"s2_mu2.cdga", R"cdga(# two-fold multiplication of S2, modeling the free path fibration
algebra S2sq
generator x1 degree 2
generator x2 degree 2
relation x1^2 = 0
relation x2^2 = 0

algebra S2
generator x degree 2
relation x^2 = 0

morphism mu : S2sq -> S2
x1 |-> x
x2 |-> x

morphism incl : S2 -> S2sq
x |-> x1
)cdga"},
      {"s2xcp2.cdga", R"cdga(# product S2 x CP2
algebra S2xCP2
generator a degree 2
generator b degree 2
relation a^2 = 0
relation b^3 = 0
)cdga"},
      {"s2xs2xs2.cdga", R"cdga(# triple product of 2-spheres
algebra S2xS2xS2
generator a degree 2
generator b degree 2
generator c degree 2
relation a^2 = 0
relation b^2 = 0
relation c^2 = 0
)cdga"},
      {"s2xs3.cdga", R"cdga(# product S2 x S3
algebra S2xS3
generator a degree 2
generator b degree 3
relation a^2 = 0
)cdga"},
      {"s3.cdga", R"cdga(# rational 3-sphere: exterior algebra on one odd class
algebra S3
generator x degree 3
)cdga"},
      {"s3_free.cdga", R"cdga(# minimal model of the 3-sphere (already finite)
algebra S3free
generator x degree 3
)cdga"},
      {"s3_path.cdga", R"cdga(# path fibration of S3 modeled by the augmentation
algebra S3
generator x degree 3

morphism eps : S3 -> Q
x |-> 0
)cdga"},
      {"s3xs3.cdga", R"cdga(# product S3 x S3
algebra S3xS3
generator a degree 3
generator b degree 3
)cdga"},
      {"s3xs3xs3.cdga", R"cdga(# triple product of 3-spheres
algebra S3xS3xS3
generator a degree 3
generator b degree 3
generator c degree 3
)cdga"},
      {"s4.cdga", R"cdga(# rational 4-sphere, cohomology presentation
algebra S4
generator x degree 4
relation x^2 = 0
)cdga"},
      {"s4_free.cdga", R"cdga(# minimal model of the 4-sphere; not finite-dimensional, so values are window-certified
algebra S4free
generator x degree 4
generator y degree 7
d y = x^2
)cdga"},
      {"s5.cdga", R"cdga(# rational 5-sphere: exterior algebra on one odd class
algebra S5
generator x degree 5
)cdga"},
      {"s5_free.cdga", R"cdga(# minimal model of the 5-sphere (already finite)
algebra S5free
generator x degree 5
)cdga"},
      {"s6.cdga", R"cdga(# rational 6-sphere, cohomology presentation
algebra S6
generator x degree 6
relation x^2 = 0
)cdga"},
      {"s6_free.cdga", R"cdga(# minimal model of the 6-sphere; not finite-dimensional, so values are window-certified
algebra S6free
generator x degree 6
generator y degree 11
d y = x^2
)cdga"},
      {"s7.cdga", R"cdga(# rational 7-sphere: exterior algebra on one odd class
algebra S7
generator x degree 7
)cdga"},
      {"s7_free.cdga", R"cdga(# minimal model of the 7-sphere (already finite)
algebra S7free
generator x degree 7
)cdga"},
  };
  return files;
}

inline const CorpusFile& corpus_file(std::string_view name) {
  for (const auto& f : corpus_files())
    if (f.name == name) return f;
  throw InvalidArgument("no corpus file " + std::string(name));
}

/// One known value. kind is mcat, mtc (n-fold), msecat (named morphism) or
/// additivity (mcat when n = 0, mtc_n otherwise) over file and second.
struct CorpusCheck {
  std::string kind;
  std::string file;
  std::string second;
  int n = 0;
  std::string morphism;
  int expected = 0;
};

inline const std::vector<CorpusCheck>& corpus_checks() {
  static const std::vector<CorpusCheck> checks{
      {"mcat", "s2.cdga", "", 0, "", 1},
      {"mcat", "s2_free.cdga", "", 0, "", 1},
      {"mcat", "s3.cdga", "", 0, "", 1},
      {"mcat", "s3_free.cdga", "", 0, "", 1},
      {"mcat", "s4.cdga", "", 0, "", 1},
      {"mcat", "s4_free.cdga", "", 0, "", 1},
      {"mcat", "s5.cdga", "", 0, "", 1},
      {"mcat", "s5_free.cdga", "", 0, "", 1},
      {"mcat", "s6.cdga", "", 0, "", 1},
      {"mcat", "s6_free.cdga", "", 0, "", 1},
      {"mcat", "s7.cdga", "", 0, "", 1},
      {"mcat", "s7_free.cdga", "", 0, "", 1},
      {"mcat", "cp1.cdga", "", 0, "", 1},
      {"mcat", "cp1_free.cdga", "", 0, "", 1},
      {"mcat", "cp2.cdga", "", 0, "", 2},
      {"mcat", "cp2_free.cdga", "", 0, "", 2},
      {"mcat", "cp3.cdga", "", 0, "", 3},
      {"mcat", "cp3_free.cdga", "", 0, "", 3},
      {"mcat", "s2xs3.cdga", "", 0, "", 2},
      {"mcat", "s3xs3.cdga", "", 0, "", 2},
      {"mcat", "s2xcp2.cdga", "", 0, "", 3},
      {"mcat", "s2xs2xs2.cdga", "", 0, "", 3},
      {"mcat", "s3xs3xs3.cdga", "", 0, "", 3},
      {"mtc", "s2.cdga", "", 2, "", 2},
      {"mtc", "s3.cdga", "", 2, "", 1},
      {"mtc", "s4.cdga", "", 2, "", 2},
      {"mtc", "s5.cdga", "", 2, "", 1},
      {"mtc", "s6.cdga", "", 2, "", 2},
      {"mtc", "s7.cdga", "", 2, "", 1},
      {"mtc", "cp1.cdga", "", 2, "", 2},
      {"mtc", "cp2.cdga", "", 2, "", 4},
      {"mtc", "cp3.cdga", "", 2, "", 6},
      {"mtc", "s2xs3.cdga", "", 2, "", 3},
      {"mtc", "s3xs3.cdga", "", 2, "", 2},
      {"mtc", "s3.cdga", "", 3, "", 2},
      {"mtc", "s2.cdga", "", 3, "", 3},
      {"msecat", "s3_path.cdga", "", 0, "eps", 1},
      {"msecat", "s2_mu2.cdga", "", 0, "mu", 2},
      {"additivity", "s3.cdga", "s3.cdga", 0, "", 2},
      {"additivity", "s2.cdga", "cp2.cdga", 0, "", 3},
      {"additivity", "s2.cdga", "s3.cdga", 2, "", 3},
      {"additivity", "s3.cdga", "s3.cdga", 2, "", 2},
  };
  return checks;
}

}  // namespace rsecat
