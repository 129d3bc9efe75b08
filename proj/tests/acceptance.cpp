// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "evoalg/evoalg.hpp"
#include "support.hpp"

using namespace evoalg;

namespace {

// Failed checks append a line here; a criterion passes when it stays empty.
struct Log {
  std::vector<std::string> failures;
  std::string summary;

  void check(bool ok, const std::string& what) {
    if (!ok && failures.size() < 10) failures.push_back(what);
    if (!ok && failures.size() == 10) failures.push_back("...");
  }
};

std::vector<CanonicalKey> keys_over(const Field& f) {
  std::vector<CanonicalKey> out;
  const auto elems = f.elements();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j) {
      if (!(elems[i] * elems[j]).is_one()) out.push_back(CanonicalKey::e1(elems[i], elems[j]));
    }
  for (const Fel& b : elems) out.push_back(CanonicalKey::e2(b));
  for (Label l : {Label::E3, Label::E4, Label::E5, Label::E6}) out.push_back(CanonicalKey::plain(l, f));
  return out;
}

std::string key_text(const CanonicalKey& k) {
  std::string s(label_name(k.label));
  if (k.params.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < k.params.size(); ++i) s += (i ? "," : "") + k.params[i].to_string();
  return s + ")";
}

void census_check(Log& log, const Field& f, bool all_flags) {
  const CensusReport r = census(f, 6, 1);
  const std::uint64_t q = f.size();
  std::uint64_t counted = 0;
  for (const KeyRecord& k : r.keys) counted += k.count;
  log.check(r.total == q * q * q * q && counted == r.total, f.name() + ": orbit sizes do not cover all MSCs");
  log.check(r.flags.keys_vs_orbits_ok, f.name() + ": an orbit mixes keys");
  log.check(r.flags.witnesses_ok, f.name() + ": a witness fails");
  if (all_flags) {
    log.check(r.flags.aut_closed_form_ok, f.name() + ": closed-form Aut differs");
    log.check(r.flags.der_closed_form_ok, f.name() + ": closed-form Der differs");
  }
  for (const std::string& s : r.failures) log.check(false, s);
  std::ostringstream os;
  os << f.name() << ": " << r.total << " MSCs, " << r.keys.size() << " keys";
  if (!log.summary.empty()) log.summary += "; ";
  log.summary += os.str();
}

void criterion1(Log& log) { census_check(log, Field::prime(3), false); }

void criterion2(Log& log) {
  log.check(gl2_enumerate(Field::prime(5)).size() == 480, "|GL(2,5)| != 480");
  census_check(log, Field::prime(5), true);
}

void criterion3(Log& log) {
  census_check(log, Field::galois(2, 2), true);
  census_check(log, Field::galois(3, 2), true);
}

void criterion4(Log& log) {
  auto order = [&](const CanonicalKey& k, std::uint64_t want) {
    const auto closed = aut_instantiate(aut_closed_form(k));
    const auto brute = brute_aut(canonical_msc(k).to_msc());
    log.check(closed == brute, k.field.name() + " " + key_text(k) + ": closed form differs from brute force");
    log.check(brute.size() == want, k.field.name() + " " + key_text(k) + ": order " + std::to_string(brute.size()) +
                                         ", expected " + std::to_string(want));
  };
  const Field f7 = Field::prime(7);
  order(CanonicalKey::e1(f7.from_int(2), f7.from_int(3)), 1);
  order(CanonicalKey::e1(f7.from_int(2), f7.from_int(2)), 2);
  order(CanonicalKey::e2(f7.from_int(3)), 1);
  order(CanonicalKey::e2(f7.zero()), 6);
  order(CanonicalKey::plain(Label::E3, f7), 6);
  order(CanonicalKey::plain(Label::E4, f7), 2);
  order(CanonicalKey::plain(Label::E5, f7), 6);
  order(CanonicalKey::plain(Label::E6, f7), 42);
  const Field f4 = Field::galois(2, 2);
  order(CanonicalKey::plain(Label::E4, f4), 1);
  order(CanonicalKey::plain(Label::E5, f4), 4);
  order(CanonicalKey::plain(Label::E3, f4), 6);
  order(CanonicalKey::plain(Label::E6, f4), 12);
  log.summary = "12 orders exact";
}

void criterion5(Log& log) {
  auto dim = [&](const CanonicalKey& k, std::size_t want) {
    const DerBasis solved = der_solve(canonical_msc(k).to_msc());
    log.check(solved.dim() == want, k.field.name() + " " + key_text(k) + ": dim " + std::to_string(solved.dim()) +
                                        ", expected " + std::to_string(want));
    log.check(solved == der_closed_form(k), k.field.name() + " " + key_text(k) + ": solver differs from table");
  };
  for (const Field& f : {Field::rationals(), Field::prime(5)}) {
    // bc != 1 rules out (2,3) over GF(5)
    dim(CanonicalKey::e1(f.from_int(2), f.from_int(f.is_finite() ? 4 : 3)), 0);
    dim(CanonicalKey::e2(f.from_int(3)), 0);
    dim(CanonicalKey::e2(f.zero()), 1);
    dim(CanonicalKey::plain(Label::E3, f), 0);
    dim(CanonicalKey::plain(Label::E4, f), 0);
    dim(CanonicalKey::plain(Label::E5, f), 1);
    dim(CanonicalKey::plain(Label::E6, f), 2);
  }
  dim(CanonicalKey::plain(Label::E4, Field::galois(2, 2)), 1);
  dim(CanonicalKey::plain(Label::E3, Field::galois(3, 2)), 1);
  log.summary = "16 dimensions exact";
}

void criterion6(Log& log) {
  testing::Gen gen(6);
  auto run = [&](const Field& f, int n) {
    for (int i = 0; i < n; ++i) {
      const Fel c = gen.nonzero(f);
      const Msc e = EvolutionMsc{f.zero(), f.one(), f.one(), c}.to_msc();
      const BasisChange g = BasisChange::from_g(Mat2::of(f.zero(), c, c * c, f.zero()));
      const Msc want = EvolutionMsc{f.one(), c.pow(-3), f.one(), f.zero()}.to_msc();
      log.check(transform(e, g) == want, f.name() + ": c = " + c.to_string());
    }
  };
  run(Field::prime(7), 100);
  run(Field::rationals(), 20);
  const ClassificationResult missed = classify(EvolutionMsc::from_ints(Field::rationals(), 0, 1, 1, 0));
  log.check(missed.key.label == Label::E3, "(0,1,1,0) is not E3");
  log.summary = "120 transforms exact, (0,1,1,0) -> " + key_text(missed.key);
}

void criterion7(Log& log) {
  testing::Gen gen(7);
  std::size_t cases = 0;

  // group action axioms
  for (const Field& f : {Field::prime(5), Field::rationals()}) {
    for (int i = 0; i < 1000; ++i, ++cases) {
      const Msc a = gen.msc(f);
      const BasisChange g1 = gen.change(f), g2 = gen.change(f);
      log.check(transform(a, BasisChange::identity(f)) == a, "identity acts trivially");
      log.check(g1.then(g2).g() == g2.g() * g1.g(), "composition order");
      log.check(transform(transform(a, g1), g2) == transform(a, g1.then(g2)), "compatibility");
    }
  }

  // key invariance, exhaustive over GF(3)
  const Field f3 = Field::prime(3);
  const auto gl3 = gl2_enumerate(f3);
  const auto all3 = testing::all_evolution(f3);
  for (const EvolutionMsc& e : all3) {
    const CanonicalKey k = classify(e).key;
    for (const BasisChange& g : gl3) {
      if (const auto moved = EvolutionMsc::from_msc(transform(e.to_msc(), g))) {
        log.check(same_key(classify(*moved).key, k), "GF(3) key changes under a basis change");
        ++cases;
      }
    }
  }

  // key invariance, random over GF(5)
  const Field f5 = Field::prime(5);
  const auto gl5 = gl2_enumerate(f5);
  for (int checked = 0; checked < 1000;) {
    const EvolutionMsc e = gen.evolution(f5);
    const BasisChange& g = gl5[static_cast<std::size_t>(gen.range(0, static_cast<long long>(gl5.size()) - 1))];
    const auto moved = EvolutionMsc::from_msc(transform(e.to_msc(), g));
    if (!moved) continue;
    log.check(same_key(classify(*moved).key, classify(e).key), "GF(5) key changes under a basis change");
    ++checked, ++cases;
  }

  // closed-form entries and rank degeneration, exhaustive over GF(3)
  for (const EvolutionMsc& e : all3) {
    const bool singular = det2x2(e).is_zero();
    for (const BasisChange& g : gl3) {
      const TransformedEntries t = transform_evolution(e, g);
      log.check(t.to_msc() == transform(e.to_msc(), g), "closed-form entries differ from the generic transform");
      if (singular) log.check((t.alpha[0] * t.beta[3] - t.alpha[3] * t.beta[0]).is_zero(), "rank degenerates");
      ++cases;
    }
  }

  // Aut group closure and Der Lie closure on every instantiated set
  for (const Field& f : {Field::prime(3), Field::galois(2, 2), Field::prime(5), Field::prime(7), Field::galois(3, 2)}) {
    for (const CanonicalKey& k : keys_over(f)) {
      const Msc e = canonical_msc(k).to_msc();
      const auto group = aut_instantiate(aut_closed_form(k));
      const std::set<Mat2, Mat2Less> members(group.begin(), group.end());
      for (const Mat2& g : group) {
        log.check(aut_check(e, g), f.name() + " " + key_text(k) + ": non-automorphism");
        log.check(members.count(g.inverse()) == 1, f.name() + " " + key_text(k) + ": not closed under inverse");
        for (const Mat2& h : group) {
          log.check(members.count(g * h) == 1, f.name() + " " + key_text(k) + ": not closed under product");
          ++cases;
        }
      }
      const DerBasis d = der_solve(e);
      for (const Mat2& a : d.basis) {
        log.check(der_check(e, a), f.name() + " " + key_text(k) + ": non-derivation");
        for (const Mat2& b : d.basis) {
          log.check(in_span(d, lie_bracket(a, b)), f.name() + " " + key_text(k) + ": bracket leaves Der");
          ++cases;
        }
      }
    }
  }
  log.summary = std::to_string(cases) + " property cases";
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EVOALG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion8(Log& log) {
  const Field q = Field::rationals();
  const EvolutionMsc e = EvolutionMsc::from_ints(q, 2, 3, 5, 7);
  const ClassificationResult r = classify(e);
  const CanonicalKey want = CanonicalKey::e1(q.from_rational(mpq_class(6, 49)), q.from_rational(mpq_class(35, 4)));
  log.check(same_key(r.key, want), "(2,3,5,7) gives " + key_text(r.key));
  log.check(r.witness.has_value() && r.witness_field == q, "(2,3,5,7) has no rational witness");
  if (r.witness) {
    log.check(transform(e.to_msc(), *r.witness) == canonical_msc(r.key).to_msc(), "(2,3,5,7) witness fails");
  }
  const ClassificationResult s = classify(EvolutionMsc::from_ints(q, 0, 2, 3, 0));
  log.check(s.key.label == Label::E3, "(0,2,3,0) gives " + key_text(s.key));
  const Poly cubic(q, {q.from_rational(mpq_class(-1, 18)), q.zero(), q.zero(), q.one()});
  log.check(s.needs_extension.has_value() && *s.needs_extension == cubic, "(0,2,3,0) does not report x^3 - 1/18");
  log.check(!s.witness.has_value(), "(0,2,3,0) has a rational witness");
  const int code = run_cli(R"(classify -a '{"field":{"kind":"Q"},"msc":["0","2","3","0"]}')");
  log.check(code == 3, "classify (0,2,3,0) exits " + std::to_string(code));
  log.summary = key_text(r.key) + "; (0,2,3,0) -> " + key_text(s.key) + " needs " +
                (s.needs_extension ? s.needs_extension->to_string() : "nothing") + ", exit " + std::to_string(code);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Log&)>>> criteria = {
      {"census over GF(3)", criterion1},
      {"census over GF(5)", criterion2},
      {"census over GF(4) and GF(9)", criterion3},
      {"Aut order table", criterion4},
      {"Der dimension table", criterion5},
      {"alternative-list E6c transform and the missed algebra", criterion6},
      {"property suites", criterion7},
      {"rational path", criterion8},
  };
  const double limits[] = {10, 120, 240, 0, 0, 0, 0, 0};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Log log;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(log);
    } catch (const std::exception& e) {
      log.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[i] > 0 && secs >= limits[i]) log.check(false, "took " + std::to_string(secs) + " s");
    const bool ok = log.failures.empty();
    all = all && ok;
    std::printf("%s criterion %zu: %s [%s] (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                log.summary.c_str(), secs);
    for (const std::string& f : log.failures) std::printf("    %s\n", f.c_str());
  }
  return all ? 0 : 1;
}
