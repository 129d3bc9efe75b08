// evoalg: classification, Aut, Der, isomorphism, verification and census of
// 2-dimensional evolution algebras from JSON.
//
// Exit codes: 0 ok, 1 bad input, 2 census consistency failure, 3 result
// needs an algebraic extension of Q (still printed).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evoalg/evoalg.hpp"
#include "evoalg/io.hpp"

namespace {

using namespace evoalg;
using io::Json;

constexpr int kOk = 0;
constexpr int kInput = 1;
constexpr int kInconsistent = 2;
constexpr int kNeedsExtension = 3;

// "-" for stdin, inline JSON, or a path.
std::string slurp(const std::string& src) {
  if (src == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  const auto first = src.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (src[first] == '{' || src[first] == '[')) return src;
  std::ifstream in(src, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot read \"" + src + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& src) {
  const std::string text = slurp(src);
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::parse_error, "malformed JSON in \"" + src.substr(0, 60) + "\"");
  return j;
}

io::Algebra load_algebra(const std::string& src) { return io::algebra_from_json(parse_json(src)); }

const EvolutionMsc& need_evolution(const io::Algebra& a) {
  if (!a.evolution) throw Error(Errc::invalid_params, "this command needs an evolution MSC");
  return *a.evolution;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json mats_to_json(const std::vector<Mat2>& ms) {
  Json out = Json::array();
  for (const Mat2& m : ms) out.push_back(io::mat_to_json(m));
  return out;
}

int run_classify(const std::string& a_src) {
  const io::Algebra a = load_algebra(a_src);
  const ClassificationResult r = classify(need_evolution(a));
  emit(io::classification_to_json(r));
  return r.needs_extension ? kNeedsExtension : kOk;
}

int run_aut(const std::string& a_src, bool enumerate) {
  const io::Algebra a = load_algebra(a_src);
  if (!a.evolution) {
    if (!enumerate || !a.field.is_finite()) {
      throw Error(Errc::invalid_params, "general MSCs support only --enumerate over a finite field");
    }
    emit(Json{{"enumerated", mats_to_json(brute_aut(a.msc))}});
    return kOk;
  }
  const ClassificationResult cls = classify(*a.evolution);
  const AutDescription d = aut_closed_form(cls.key);
  Json j = io::aut_to_json(d);
  if (a.field.is_finite()) j["instantiated"] = mats_to_json(aut_instantiate(d));
  if (enumerate) j["enumerated"] = mats_to_json(aut_enumerate(*a.evolution));
  emit(j);
  return d.needs_extension ? kNeedsExtension : kOk;
}

int run_der(const std::string& a_src) {
  const io::Algebra a = load_algebra(a_src);
  emit(io::der_to_json(der_solve(a.msc)));
  return kOk;
}

int run_iso(const std::string& a_src, const std::string& b_src) {
  const io::Algebra a = load_algebra(a_src), b = load_algebra(b_src);
  try {
    const auto w = iso_test(need_evolution(a), need_evolution(b));
    if (!w) {
      emit(Json{{"isomorphic", false}});
      return kOk;
    }
    emit(Json{{"isomorphic", true},
              {"witness", io::mat_to_json(w->witness.ginv())},
              {"convention", "g_inverse"},
              {"witness_field", io::field_to_json(w->field)}});
    return kOk;
  } catch (const NeedsExtension& e) {
    emit(Json{{"isomorphic", true},
              {"witness", nullptr},
              {"convention", "g_inverse"},
              {"needs_extension", io::poly_to_json(e.poly())},
              {"needs_extension_text", e.poly().to_string()}});
    return kNeedsExtension;
  }
}

// g is a bare matrix over the algebra's field, or an object carrying
// "witness" and optionally "witness_field" (as classify and iso print it).
std::pair<Mat2, Field> load_matrix(const std::string& src, const Field& base) {
  const Json j = parse_json(src);
  if (j.is_array()) return {io::mat_from_json(j, base), base};
  if (!j.is_object() || !j.contains("witness")) throw Error(Errc::parse_error, "-g needs a matrix or a witness");
  if (j["witness"].is_null()) throw Error(Errc::parse_error, "the witness is null");
  Field f = base;
  if (j.contains("witness_field")) f = io::field_from_json(j["witness_field"]);
  else if (j.contains("field")) f = io::field_from_json(j["field"]);
  return {io::mat_from_json(j["witness"], f), f};
}

int run_verify(const std::string& a_src, const std::string& g_src, const std::string& mode) {
  const io::Algebra a = load_algebra(a_src);
  const auto [m, k] = load_matrix(g_src, a.field);
  const Embedding emb(a.field, k);
  const Msc e = a.msc.mapped(emb);
  bool holds = false;
  if (mode == "aut") {
    holds = aut_check(e, m);
  } else if (mode == "der") {
    holds = der_check(e, m);
  } else if (mode.rfind("iso:", 0) == 0) {
    const io::Algebra t = load_algebra(mode.substr(4));
    require_same_field(a.field, t.field);
    if (m.det().is_zero()) throw Error(Errc::singular_change, "the matrix is singular");
    holds = transform(e, BasisChange(m)) == t.msc.mapped(emb);
  } else {
    throw Error(Errc::parse_error, "--mode is aut, der or iso:<target>");
  }
  emit(Json{{"mode", mode.rfind("iso:", 0) == 0 ? "iso" : mode}, {"holds", holds}});
  return kOk;
}

Field load_field(const std::string& text) {
  std::error_code ec;
  if (text.empty()) throw Error(Errc::parse_error, "empty field");
  if (text != "-" && text.front() != '{' && std::filesystem::is_regular_file(text, ec)) {
    return io::field_from_json(parse_json(text));
  }
  if (text == "-") return io::field_from_json(parse_json(text));
  return io::field_from_text(text);
}

int run_census(const std::string& field_text, unsigned max_ext, unsigned jobs, bool csv) {
  const Field f = load_field(field_text);
  const CensusReport r = census(f, max_ext, jobs);
  if (csv) std::cout << io::census_to_csv(r);
  else emit(io::census_to_json(r));
  if (!r.flags.all()) {
    for (const std::string& s : r.failures) std::cerr << "census: " << s << '\n';
    return kInconsistent;
  }
  return kOk;
}

Fel parse_param(const std::string& text, const Field& f) {
  if (!text.empty() && text.front() == '[') return io::fel_from_json(Json::parse(text), f);
  return io::fel_from_json(Json(text), f);
}

int run_t2map(const std::string& label_text, const std::vector<std::string>& params, const std::string& field_text) {
  const Field f = load_field(field_text);
  const auto label = parse_alt_label(label_text);
  if (!label) throw Error(Errc::parse_error, "unknown label \"" + label_text + "\"");
  std::vector<Fel> ps;
  for (const std::string& p : params) ps.push_back(parse_param(p, f));
  emit(io::key_to_json(alt_to_key(*label, ps, f)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify 2-dimensional evolution algebras and compute their Aut and Der."};
  app.require_subcommand(1, 1);

  std::string a_src, b_src, g_src, mode, field_text = "Q", label;
  std::vector<std::string> params;
  bool enumerate = false, csv = false;
  unsigned max_ext = 6, jobs = 1;

  auto* c_classify = app.add_subcommand("classify", "canonical key and witness");
  c_classify->add_option("-a,--algebra", a_src, "algebra JSON (path, inline or -)")->required();

  auto* c_aut = app.add_subcommand("aut", "automorphism group");
  c_aut->add_option("-a,--algebra", a_src, "algebra JSON (path, inline or -)")->required();
  c_aut->add_flag("--enumerate", enumerate, "list Aut of the algebra itself (finite fields)");

  auto* c_der = app.add_subcommand("der", "derivation algebra");
  c_der->add_option("-a,--algebra", a_src, "algebra JSON (path, inline or -)")->required();

  auto* c_iso = app.add_subcommand("iso", "isomorphism test");
  c_iso->add_option("-a", a_src, "first algebra")->required();
  c_iso->add_option("-b", b_src, "second algebra")->required();

  auto* c_verify = app.add_subcommand("verify", "check a matrix against an algebra");
  c_verify->add_option("-a,--algebra", a_src, "algebra JSON")->required();
  c_verify->add_option("-g", g_src, "matrix, read as g^-1 for iso")->required();
  c_verify->add_option("--mode", mode, "aut | der | iso:<target algebra>")->required();

  auto* c_census = app.add_subcommand("census", "brute-force census over GF(q)");
  c_census->add_option("--field", field_text, "descriptor JSON, path, or GF(p), GF(p^k)")->required();
  c_census->add_option("--max-ext", max_ext, "largest witness extension degree")->check(CLI::PositiveNumber);
  c_census->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  c_census->add_flag("--csv", csv, "CSV summary instead of JSON");

  auto* c_t2map = app.add_subcommand("t2map", "key of an algebra from the alternative list");
  c_t2map->add_option("--label", label, "E1..E4, E5ab, E6c")->required();
  c_t2map->add_option("--param", params, "parameters, in order")->expected(0, -1);
  c_t2map->add_option("--field", field_text, "field (default Q)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*c_classify) return run_classify(a_src);
    if (*c_aut) return run_aut(a_src, enumerate);
    if (*c_der) return run_der(a_src);
    if (*c_iso) return run_iso(a_src, b_src);
    if (*c_verify) return run_verify(a_src, g_src, mode);
    if (*c_census) return run_census(field_text, max_ext, jobs, csv);
    if (*c_t2map) return run_t2map(label, params, field_text);
  } catch (const Error& e) {
    std::cerr << "evoalg: " << e.what() << '\n';
    return kInput;
  } catch (const Json::exception& e) {
    std::cerr << "evoalg: malformed JSON: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "evoalg: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
