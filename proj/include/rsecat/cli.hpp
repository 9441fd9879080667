#pragma once
// Command-line driver. Exit status: 0 when a value is determined, 2 when the
// answer is undetermined (window or m_max exhausted), 1 on any error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsecat/corpus.hpp"
#include "rsecat/dsl.hpp"
#include "rsecat/report.hpp"

namespace rsecat {

namespace detail {

struct CommonFlags {
  int max_m = 8;
  int depth = 0;  // 0: from the file, else 2
  std::vector<int> window;
  std::string format = "text";
  bool witness = false;
  bool timing = false;
};

inline void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--max-m", f.max_m, "largest m scanned")->check(CLI::Range(0, 64));
  sub->add_option("--depth", f.depth, "resolution depth")->check(CLI::Range(1, 64));
  sub->add_option("--window", f.window, "degree window lo hi")->expected(2);
  sub->add_option("--format", f.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sub->add_flag("--witness", f.witness, "emit the witness cocycle");
  sub->add_flag("--timing", f.timing, "include wall-clock seconds");
}

/// Reads a model from disk, falling back to the built-in corpus by file name.
inline ModelDocument load_model(const std::string& path, const CommonFlags& f) {
  std::string text;
  std::ifstream in(path);
  if (in) {
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  } else {
    std::string base = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
    bool found = false;
    for (const auto& c : corpus_files())
      if (c.name == base) text = std::string(c.text), found = true;
    if (!found) throw InvalidArgument("cannot read " + path + " (not a file or corpus model)");
  }
  ModelDocument doc;
  try {
    doc = parse_model(text);
    if (!f.window.empty()) {
      if (f.window[0] > 0 || f.window[1] < 2) throw InvalidArgument("--window must satisfy lo <= 0 and hi >= 2");
      doc.window = std::make_pair(f.window[0], f.window[1]);
      build_document(doc);
    }
  } catch (const ParseError& e) {
    throw Error(path + ":" + e.what());
  }
  return doc;
}

inline EngineOptions engine_options(const CommonFlags& f, const ModelDocument& doc) {
  EngineOptions o;
  o.m_max = f.max_m;
  o.depth = f.depth > 0 ? f.depth : doc.depth.value_or(2);
  return o;
}

inline CdgaPtr pick_algebra(const ModelDocument& doc, const std::string& name) {
  return name.empty() ? doc.first_algebra() : doc.algebra(name);
}

inline int emit(const SecatReport& r, const CommonFlags& f, std::ostream& out) {
  ReportOptions ro{f.witness, f.timing};
  if (f.format == "json") out << to_json(r, ro).dump(2) << "\n";
  else out << format_text(r, ro);
  return r.value ? 0 : 2;
}

/// mcat when n == 0, mtc_n otherwise.
inline SurjectiveModel front_end_model(const CdgaPtr& a, int n) {
  return n == 0 ? augmentation_smodel(a) : multiplication_smodel(a, n).smodel;
}

inline int parse_invariant(const std::string& s) {
  if (s == "mcat") return 0;
  if (s.rfind("mtc:", 0) == 0) {
    try {
      int n = std::stoi(s.substr(4));
      if (n >= 2) return n;
    } catch (const std::exception&) {
    }
  }
  throw InvalidArgument("--invariant must be mcat or mtc:<n> with n >= 2, got '" + s + "'");
}

struct CorpusOutcome {
  std::string label;
  std::optional<int> value;
  int expected = 0;
  std::string status;
  bool ok = false;
};

inline CorpusOutcome run_check(const CorpusCheck& c, const CommonFlags& f) {
  ModelDocument d1 = load_model(c.file, f);
  EngineOptions o = engine_options(f, d1);
  CorpusOutcome r;
  r.expected = c.expected;
  if (c.kind == "mcat" || c.kind == "mtc") {
    SecatReport rep = c.kind == "mcat" ? mcat(d1.first_algebra(), o) : mtc(d1.first_algebra(), c.n, o);
    r.label = rep.invariant + " " + c.file;
    r.value = rep.value;
    r.status = rep.status;
  } else if (c.kind == "msecat") {
    SecatReport rep = msecat_via_quotient(make_smodel(c.morphism, d1.morphism(c.morphism)), o);
    r.label = "msecat " + c.file + " " + c.morphism;
    r.value = rep.value;
    r.status = rep.status;
  } else {
    ModelDocument d2 = load_model(c.second, f);
    AdditivityReport a = verify_additivity(front_end_model(d1.first_algebra(), c.n),
                                           front_end_model(d2.first_algebra(), c.n), o);
    r.label = std::string(c.n == 0 ? "mcat" : "mtc_" + std::to_string(c.n)) + " " + c.file + " x " + c.second;
    r.value = a.lhs;
    r.status = a.product.status;
    if (!a.equal) r.status += ", additivity defect";
  }
  r.ok = r.value && *r.value == r.expected && r.status.find("defect") == std::string::npos;
  return r;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rsecat: rational module sectional category of CDGA models"};
  app.require_subcommand(1);
  detail::CommonFlags flags;

  std::string file, file2, algebra_name, model_name, section_name, route = "quotient", invariant;
  int n = 2;
  bool assert_retraction = false;

  auto* c_mcat = app.add_subcommand("mcat", "module LS category of a model");
  c_mcat->add_option("file", file, "model file")->required();
  c_mcat->add_option("--algebra", algebra_name, "algebra to use (default: first declared)");
  detail::add_common(c_mcat, flags);

  auto* c_mtc = app.add_subcommand("mtc", "module higher topological complexity");
  c_mtc->add_option("file", file, "model file")->required();
  c_mtc->add_option("--n", n, "number of path points")->required()->check(CLI::Range(2, 16));
  c_mtc->add_option("--algebra", algebra_name, "algebra to use (default: first declared)");
  detail::add_common(c_mtc, flags);

  auto* c_msecat = app.add_subcommand("msecat", "module sectional category of a declared surjection");
  c_msecat->add_option("file", file, "model file")->required();
  c_msecat->add_option("--model", model_name, "surjective morphism")->required();
  c_msecat->add_option("--section", section_name, "morphism serving as a strict section");
  c_msecat->add_flag("--assert-retraction", assert_retraction, "trust the homotopy retraction hypothesis");
  c_msecat->add_option("--route", route, "quotient or join")->check(CLI::IsMember({"quotient", "join"}));
  detail::add_common(c_msecat, flags);

  bool sub_only = false;
  auto* c_add = app.add_subcommand("additivity", "check msecat(f x g) against msecat(f) + msecat(g)");
  c_add->add_option("fileF", file, "first model")->required();
  c_add->add_option("fileG", file2, "second model")->required();
  c_add->add_option("--invariant", invariant, "mcat or mtc:<n>")->required();
  c_add->add_flag("--subadditivity", sub_only, "only check the inequality (no hypothesis needed)");
  detail::add_common(c_add, flags);

  auto* c_corpus = app.add_subcommand("corpus", "run the built-in suite of known values");
  detail::add_common(c_corpus, flags);

  auto* c_print = app.add_subcommand("print", "print a model in canonical form");
  c_print->add_option("file", file, "model file")->required();

  std::vector<std::string> rev(args.empty() ? args.end() : args.begin() + 1, args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (c_print->parsed()) {
      out << print_model(detail::load_model(file, flags));
      return 0;
    }
    if (c_mcat->parsed() || c_mtc->parsed()) {
      ModelDocument doc = detail::load_model(file, flags);
      CdgaPtr a = detail::pick_algebra(doc, algebra_name);
      EngineOptions o = detail::engine_options(flags, doc);
      return detail::emit(c_mcat->parsed() ? mcat(a, o) : mtc(a, n, o), flags, out);
    }
    if (c_msecat->parsed()) {
      ModelDocument doc = detail::load_model(file, flags);
      std::optional<CdgaMorphism> section;
      if (!section_name.empty()) section = doc.morphism(section_name);
      SurjectiveModel s = make_smodel(model_name, doc.morphism(model_name), section, Provenance::user, assert_retraction);
      EngineOptions o = detail::engine_options(flags, doc);
      return detail::emit(route == "join" ? msecat_via_join(s, o) : msecat_via_quotient(s, o), flags, out);
    }
    if (c_add->parsed()) {
      int k = detail::parse_invariant(invariant);
      ModelDocument df = detail::load_model(file, flags), dg = detail::load_model(file2, flags);
      EngineOptions o = detail::engine_options(flags, df);
      SurjectiveModel f = detail::front_end_model(df.first_algebra(), k);
      SurjectiveModel g = detail::front_end_model(dg.first_algebra(), k);
      AdditivityReport a = sub_only ? verify_subadditivity(f, g, o) : verify_additivity(f, g, o);
      ReportOptions ro{flags.witness, flags.timing};
      if (flags.format == "json") out << to_json(a, invariant, sub_only, ro).dump(2) << "\n";
      else out << format_text(a, invariant, sub_only, ro);
      bool bad = sub_only ? !a.subadditive : a.defect;
      return bad ? 1 : 0;
    }
    if (c_corpus->parsed()) {
      bool all = true;
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& c : corpus_checks()) {
        detail::CorpusOutcome r = detail::run_check(c, flags);
        all = all && r.ok;
        if (flags.format == "json") {
          nlohmann::ordered_json j;
          j["check"] = r.label;
          j["value"] = r.value ? nlohmann::ordered_json(*r.value) : nlohmann::ordered_json(nullptr);
          j["expected"] = r.expected;
          j["status"] = r.status;
          j["ok"] = r.ok;
          arr.push_back(j);
        } else {
          out << r.label << " = " << (r.value ? std::to_string(*r.value) : "?") << " expected " << r.expected << " "
              << (r.ok ? "ok" : "FAIL") << " (" << r.status << ")\n";
        }
      }
      if (flags.format == "json") out << arr.dump(2) << "\n";
      else out << (all ? "all checks passed" : "some checks FAILED") << "\n";
      return all ? 0 : 1;
    }
  } catch (const Undetermined& e) {
    err << "undetermined: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace rsecat
