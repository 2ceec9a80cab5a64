#include "qcayley/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "qcayley/cayley.hpp"
#include "qcayley/closedform.hpp"
#include "qcayley/error.hpp"
#include "qcayley/kinf.hpp"
#include "qcayley/oracle.hpp"

namespace qcayley {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kPolarTol = 1e-8;
constexpr double kAngleTol = 1e-8;
constexpr double kConjTol = 1e-10;

FreeProduct group_of(const Config& cfg) {
  if (cfg.factors.empty()) fail(ErrorCode::ConfigError, "factor list is empty");
  return FreeProduct(cfg.factors);
}

std::vector<const FactorSpec*> continuous_factors(const Config& cfg) {
  std::vector<const FactorSpec*> out;
  for (const auto& f : cfg.factors)
    if (f.kind() != FactorKind::Cyclic) out.push_back(&f);
  return out;
}

// alpha_k = g g_bar g ... (k letters) of one factor.
IrrWord alternating_word(const FreeProduct& group, const FactorSpec& f, int k) {
  std::vector<Direction> letters;
  for (int i = 0; i < k; ++i) letters.push_back(group.direction(f.factor_id(), i % 2 == 0 ? Letter::g : Letter::g_bar));
  return group.reduce_word(letters);
}

ojson factor_header(const FactorSpec& f) {
  ojson j;
  j["factor_id"] = f.factor_id();
  j["kind"] = kind_name(f.kind());
  j["n"] = f.n();
  j["m1"] = f.m1();
  return j;
}

std::string render_tables(const std::vector<NormTable>& tables, OutputFormat fmt, const ojson& meta) {
  if (fmt == OutputFormat::Csv) {
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i) out += '\n';
      out += tables[i].to_csv();
    }
    return out;
  }
  ojson j = meta;
  j["tables"] = ojson::array();
  for (const auto& t : tables) j["tables"].push_back(ojson::parse(t.to_json()));
  return j.dump(2) + "\n";
}

void require_format(OutputFormat fmt, std::initializer_list<OutputFormat> allowed, const char* cmd) {
  for (auto a : allowed)
    if (a == fmt) return;
  fail(ErrorCode::UnsupportedFormat, std::string(cmd) + " does not support format " + format_name(fmt));
}

NormTable make_table(const FactorSpec& f, const char* formula, std::vector<std::string> idx) {
  NormTable t;
  t.label = "f" + std::to_string(f.factor_id()) + ":" + formula;
  t.formula_id = formula;
  t.index_names = {"factor"};
  t.index_names.insert(t.index_names.end(), idx.begin(), idx.end());
  return t;
}

std::vector<NormTable> norm_tables(const Config& cfg, const FreeProduct& group, const FactorSpec& f) {
  const int K = std::min(cfg.kmax, 12);
  const int id = f.factor_id();
  const DimSequence dims = dim_sequence(f, K + 1);
  std::vector<NormTable> out;

  NormTable polar = make_table(f, "polar", {"p", "p_prime", "q"});
  for (int p = 0; p < K; ++p)
    for (int pp = 0; pp < K; ++pp)
      for (int q = 0; q <= std::min(p, pp); ++q) polar.add({id, p, pp, q}, polar_norm(p, pp, q, dims));
  out.push_back(std::move(polar));

  NormTable a1 = make_table(f, "angle1", {"k", "l"});
  for (int k = 2; k <= K; ++k)
    for (int l = 1; l < k; ++l) a1.add({id, k, l}, angle1_norm(k, l, dims));
  out.push_back(std::move(a1));

  NormTable a2 = make_table(f, "angle2", {"k", "k_prime"});
  for (int k = 1; k <= K; ++k)
    for (int kp = 1; k + kp - 1 <= K; ++kp) a2.add({id, k, kp}, angle2_norm(k, kp, dims));
  out.push_back(std::move(a2));

  NormTable th = make_table(f, "theta_block", {"k", "l", "eps1", "eps1_prime", "eps2", "eps2_prime"});
  for (int k = 1; k <= K; ++k)
    for (int l = 1; l <= k; ++l)
      for (int e1 : {1, -1})
        for (int e1p : {1, -1})
          for (int e2 : {1, -1}) th.add({id, k, l, e1, e1p, e2, -e1}, theta_block_norm(k, l, {e1, e1p}, {e2, -e1}, dims));
  out.push_back(std::move(th));

  NormTable tg = make_table(f, "target", {"len_alpha", "len_beta"});
  for (int a = 0; a <= K; ++a)
    for (int b = 0; a + b <= K; ++b) {
      IrrWord alpha = alternating_word(group, f, a);
      IrrWord full = alternating_word(group, f, a + b);
      IrrWord beta;
      beta.letters.assign(full.letters.begin() + a, full.letters.end());
      tg.add({id, a, b}, target_norm(group, alpha, beta));
    }
  out.push_back(std::move(tg));

  NormTable ca = make_table(f, "comm_angle", {"k"});
  for (int k = 1; k <= K; ++k) ca.add({id, k}, commutator_angle(k, dims));
  out.push_back(std::move(ca));

  NormTable ce = make_table(f, "comm_ext", {"k", "k_prime"});
  for (int k = 1; k <= K; ++k)
    for (int kp = 1; k + kp - 1 <= K; ++kp) ce.add({id, k, kp}, commutator_ext_bound(k, kp, dims));
  out.push_back(std::move(ce));

  NormTable f0 = make_table(f, "f0", {"k"});
  for (int k = 0; k <= std::min(cfg.kmax, 30); ++k) f0.add({id, k}, f0_norm(group, alternating_word(group, f, k)));
  out.push_back(std::move(f0));
  return out;
}

int natural_sign(const FactorSpec& f) {
  return f.kind() == FactorKind::Orthogonal ? -f.orthogonal_sign() : -1;
}

}  // namespace

std::vector<SuiteFactor> default_suite() {
  return {
      {"Ao_I3", FactorSpec::orthogonal(Eigen::MatrixXcd::Identity(3, 3)), -1},
      {"Ao_q2", FactorSpec::orthogonal_q(2.0), 1},
      {"Au_I2", FactorSpec::unitary(Eigen::MatrixXcd::Identity(2, 2)), -1},
  };
}

std::vector<SuiteFactor> suite_for(const Config& cfg) {
  std::vector<SuiteFactor> suite;
  if (cfg.factors.empty()) {
    suite = default_suite();
  } else {
    for (const auto& f : cfg.factors)
      if (f.kind() != FactorKind::Cyclic) suite.push_back({"f" + std::to_string(f.factor_id()), f, natural_sign(f)});
  }
  if (cfg.sign)
    for (auto& s : suite) s.sign = *cfg.sign;
  return suite;
}

int verify_leg_budget(int n) {
  int legs = 0;
  double amb = 1.0;
  while (legs < 10 && amb * n <= 1e4) {
    amb *= n;
    ++legs;
  }
  return legs;
}

VerificationReport run_verification(const std::vector<SuiteFactor>& suite, std::size_t ambient_cap) {
  VerificationReport rep;
  for (const auto& sf : suite) {
    Oracle oracle(sf.factor, sf.sign, ambient_cap);
    const int budget = verify_leg_budget(sf.factor.n());
    const DimSequence dims = dim_sequence(sf.factor, budget + 2);

    auto run = [&](const std::string& kind, const std::string& params, double tol, auto&& body) {
      VerificationCase c;
      c.case_id = sf.label + "/" + kind + "/" + params;
      c.params = params;
      c.tolerance = tol;
      try {
        body(c);
        c.pass = c.deviation < tol && std::isfinite(c.deviation);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::AmbientTooLarge) {
          c.skipped = true;
        } else if (e.code() == ErrorCode::SignMismatch || e.code() == ErrorCode::DegenerateG) {
          c.pass = false;
        } else {
          throw;
        }
        c.note = e.what();
      }
      rep.cases.push_back(std::move(c));
    };

    run("conj_identity", "legs=3", kConjTol, [&](VerificationCase& c) {
      c.closed_form = 0.0;
      c.measured = oracle.conjugation_identity_deviation();
      c.deviation = c.measured;
    });
    for (int k = 0; k < budget; ++k)
      run("hw_dim", "k=" + std::to_string(k), 0.5, [&](VerificationCase& c) {
        c.closed_form = static_cast<double>(dims.d.at(static_cast<std::size_t>(k)));
        c.measured = static_cast<double>(oracle.highest_weight_space(k).dim());
        c.deviation = std::abs(c.measured - c.closed_form);
      });
    for (int p = 0; p + 3 <= budget; ++p)
      for (int pp = 0; p + pp + 3 <= budget; ++pp)
        run("coeffs", "p=" + std::to_string(p) + ",pp=" + std::to_string(pp), kCoeffTol, [&](VerificationCase& c) {
          c.closed_form = 0.0;
          c.deviation = c.measured = oracle.verify_coeffs(p, pp);
        });
    for (int p = 0; p + 3 <= budget; ++p)
      for (int pp = 0; p + pp + 3 <= budget; ++pp)
        for (int q = 0; q <= std::min(p, pp); ++q)
          run("polar", "p=" + std::to_string(p) + ",pp=" + std::to_string(pp) + ",q=" + std::to_string(q), kPolarTol,
              [&](VerificationCase& c) {
                PolarCheck pc = oracle.verify_polar(p, pp, q);
                c.closed_form = pc.closed_form;
                c.measured = pc.measured;
                c.deviation = std::max(pc.rel_deviation, pc.spread);
              });
    for (int k = 2; 2 * k <= budget; ++k)
      for (int l = 1; l < k; ++l)
        run("angles1", "k=" + std::to_string(k) + ",l=" + std::to_string(l), kAngleTol, [&](VerificationCase& c) {
          AngleCheck ac = oracle.verify_angles1(k, l);
          c.closed_form = ac.closed_form;
          c.measured = ac.measured;
          c.deviation = ac.deviation;
        });
    for (int k = 1; k + 2 <= budget; ++k)
      for (int kp = 1; 1 + k + kp <= budget; ++kp)
        run("angles2", "k=" + std::to_string(k) + ",kp=" + std::to_string(kp), kAngleTol, [&](VerificationCase& c) {
          AngleCheck ac = oracle.verify_angles2(k, kp);
          c.closed_form = ac.closed_form;
          c.measured = ac.measured;
          c.deviation = ac.deviation;
        });
  }
  std::stable_sort(rep.cases.begin(), rep.cases.end(),
                   [](const VerificationCase& a, const VerificationCase& b) { return a.case_id < b.case_id; });
  for (const auto& c : rep.cases) {
    if (c.skipped)
      ++rep.skipped;
    else if (c.pass)
      ++rep.passed;
    else
      ++rep.failed;
  }
  return rep;
}

CommandResult cmd_tree(const Config& cfg) {
  require_format(cfg.output_format, {OutputFormat::Dot, OutputFormat::Json}, "tree");
  FreeProduct group = group_of(cfg);
  CayleyTree tree = CayleyTree::build(group, cfg.radius, cfg.vertex_cap);
  return {export_graph(tree, cfg.output_format == OutputFormat::Dot ? GraphFormat::Dot : GraphFormat::Json), 0};
}

CommandResult cmd_dims(const Config& cfg) {
  require_format(cfg.output_format, {OutputFormat::Json, OutputFormat::Csv}, "dims");
  group_of(cfg);
  auto facs = continuous_factors(cfg);
  if (cfg.output_format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "factor,k,m,d\n";
    for (const FactorSpec* f : facs) {
      DimSequence ds = dim_sequence(*f, cfg.kmax);
      for (int k = 0; k <= cfg.kmax; ++k) {
        os << f->factor_id() << ',' << k << ',' << format_real(ds.m[k]) << ',';
        if (static_cast<std::size_t>(k) < ds.d.size()) os << ds.d[k];
        os << '\n';
      }
    }
    return {os.str(), 0};
  }
  ojson j;
  j["factors"] = ojson::array();
  for (const FactorSpec* f : facs) {
    DimSequence ds = dim_sequence(*f, cfg.kmax);
    ojson fj = factor_header(*f);
    fj["growth_rate_a"] = ds.growth_rate_a;
    fj["exceptional"] = ds.exceptional;
    fj["m"] = ds.m;
    fj["d"] = ds.d;
    j["factors"].push_back(std::move(fj));
  }
  return {j.dump(2) + "\n", 0};
}

CommandResult cmd_norms(const Config& cfg) {
  require_format(cfg.output_format, {OutputFormat::Json, OutputFormat::Csv}, "norms");
  FreeProduct group = group_of(cfg);
  std::vector<NormTable> tables;
  for (const FactorSpec* f : continuous_factors(cfg)) {
    auto t = norm_tables(cfg, group, *f);
    tables.insert(tables.end(), t.begin(), t.end());
  }
  return {render_tables(tables, cfg.output_format, ojson::object()), 0};
}

CommandResult cmd_ao(const Config& cfg) {
  require_format(cfg.output_format, {OutputFormat::Json, OutputFormat::Csv}, "ao");
  FreeProduct group = group_of(cfg);
  const int K = std::min(cfg.kmax, 30);
  std::vector<NormTable> tables;
  ojson meta;
  meta["factors"] = ojson::array();
  for (const FactorSpec* f : continuous_factors(cfg)) {
    NormTable t = make_table(*f, "f0", {"k"});
    for (int k = 0; k <= K; ++k) t.add({f->factor_id(), k}, f0_norm(group, alternating_word(group, *f, k)));
    tables.push_back(t);
    ojson fj = factor_header(*f);
    DimSequence ds = dim_sequence(*f, K);
    if (ds.exceptional || K < 1) {
      fj["bounded_diff"] = nullptr;
      fj["note"] = "ExceptionalCase: differences grow when m1 = 2";
    } else {
      BoundedDiff bd = f_sequence_bounded_diff(ds, K);
      const double a = ds.growth_rate_a;
      fj["bounded_diff"] = {{"max_diff", bd.max_diff},
                            {"sup_index", bd.sup_index},
                            {"last_diff", bd.diffs.back()},
                            {"limit", a * a / (a * a - 1.0)},
                            {"ratio_last", bd.f.back() / (K + 1)},
                            {"ratio_limit", a / (a - 1.0 / a)}};
    }
    meta["factors"].push_back(std::move(fj));
  }
  return {render_tables(tables, cfg.output_format, meta), 0};
}

CommandResult cmd_kinf(const Config& cfg) {
  require_format(cfg.output_format, {OutputFormat::Json, OutputFormat::Csv}, "kinf");
  FreeProduct group = group_of(cfg);
  const KerRsCriterion crit = ker_rs_criterion(group);
  const int L = std::min(cfg.kmax, 8);
  const int K = std::min(cfg.kmax, 20);

  ojson j;
  j["criterion"] = criterion_name(crit);
  j["k_inf"] = crit == KerRsCriterion::Classical ? "trivial" : "nontrivial";
  j["factors"] = ojson::array();
  std::vector<NormTable> tables;
  for (const FactorSpec* f : continuous_factors(cfg)) {
    DimSequence ds = dim_sequence(*f, std::max(cfg.kmax, 2));
    ojson fj = factor_header(*f);
    fj["exceptional"] = ds.exceptional;
    NormTable rk = make_table(*f, "rk", {"k", "l"});
    ojson rks = ojson::array();
    for (int l = 1; l <= L; ++l)
      for (int k = l; k <= K; ++k) {
        RkNorm r = rk_norm(k, l, ds, cfg.tol_product);
        rk.add({f->factor_id(), k, l}, r.value);
        rks.push_back({{"k", k}, {"l", l}, {"value", r.value}, {"tail_bound", r.tail_bound}});
      }
    fj["rk_norm"] = std::move(rks);
    NormTable ln = make_table(*f, "lambda_norm", {"l", "N"});
    ojson lns = ojson::array();
    const double a = ds.growth_rate_a;
    for (int l = 1; l <= L && l <= cfg.truncation_N; ++l) {
      double v = lambda_norm(lambda_matrix(l, ds, cfg.truncation_N, cfg.tol_product), cfg.tol_spectral);
      ln.add({f->factor_id(), l, cfg.truncation_N}, v);
      ojson e = {{"l", l}, {"N", cfg.truncation_N}, {"value", v}};
      if (ds.exceptional) {
        e["lower"] = l * M_PI / 4.0;
        e["upper"] = (l + 1) * M_PI;
      } else {
        e["lower"] = 0.0;
        e["upper"] = a * a / ((a * a - 1.0) * (a - 1.0) * (a - 1.0));
      }
      e["within"] = v >= e["lower"].get<double>() && v <= e["upper"].get<double>();
      lns.push_back(std::move(e));
    }
    fj["lambda_norms"] = std::move(lns);
    ShiftModel model = ShiftModel::build(ds, 1, std::min(cfg.kmax, ds.kmax()));
    fj["co_isometry_deviation"] = co_isometry_check(model, std::min(cfg.kmax, cfg.truncation_N), cfg.tol_product);
    if (ds.exceptional) {
      fj["hilbert_norm"] = {{"N", cfg.truncation_N}, {"value", hilbert_norm(cfg.truncation_N, cfg.tol_spectral)}};
    }
    tables.push_back(std::move(rk));
    tables.push_back(std::move(ln));
    j["factors"].push_back(std::move(fj));
  }
  if (cfg.edge_coefficients) {
    auto facs = continuous_factors(cfg);
    if (facs.empty()) fail(ErrorCode::ConfigError, "membership test needs an orthogonal or unitary factor");
    DimSequence ds = dim_sequence(*facs.front(), cfg.kmax);
    ShiftModel model = ShiftModel::build(ds, cfg.edge_coefficients->l, cfg.kmax);
    MembershipResult mr = membership_test(*cfg.edge_coefficients, model, cfg.kmax, cfg.tol_product);
    j["membership"] = {{"factor_id", facs.front()->factor_id()},
                       {"in_ker_rs", mr.in_ker_rs},
                       {"rs_value", mr.rs_value},
                       {"partial_norms", mr.partial_norms}};
  }
  if (cfg.output_format == OutputFormat::Csv) {
    std::string out = "criterion\n" + std::string(criterion_name(crit)) + "\n";
    for (const auto& t : tables) out += "\n" + t.to_csv();
    return {out, 0};
  }
  return {j.dump(2) + "\n", 0};
}

CommandResult cmd_verify(const Config& cfg) {
  require_format(cfg.output_format, {OutputFormat::Json, OutputFormat::Csv}, "verify");
  VerificationReport rep = run_verification(suite_for(cfg), cfg.ambient_cap);
  const int code = rep.failed > 0 ? 1 : 0;
  if (cfg.output_format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "case_id,closed_form,measured,deviation,pass,skipped\n";
    for (const auto& c : rep.cases)
      os << c.case_id << ',' << format_real(c.closed_form) << ',' << format_real(c.measured) << ','
         << format_real(c.deviation) << ',' << (c.pass ? "true" : "false") << ',' << (c.skipped ? "true" : "false") << '\n';
    return {os.str(), code};
  }
  ojson j;
  j["cases"] = ojson::array();
  for (const auto& c : rep.cases) {
    ojson cj = {{"case_id", c.case_id},
                {"params", c.params},
                {"closed_form", c.closed_form},
                {"measured", c.measured},
                {"deviation", c.deviation},
                {"tolerance", c.tolerance},
                {"pass", c.pass}};
    if (c.skipped) cj["skipped"] = true;
    if (!c.note.empty()) cj["note"] = c.note;
    j["cases"].push_back(std::move(cj));
  }
  j["summary"] = {{"total", rep.cases.size()}, {"passed", rep.passed}, {"failed", rep.failed}, {"skipped", rep.skipped}};
  return {j.dump(2) + "\n", code};
}

CommandResult run_command(const Config& cfg, std::string_view command) {
  cfg.validate();
  if (command == "tree") return cmd_tree(cfg);
  if (command == "dims") return cmd_dims(cfg);
  if (command == "norms") return cmd_norms(cfg);
  if (command == "kinf") return cmd_kinf(cfg);
  if (command == "verify") return cmd_verify(cfg);
  if (command == "ao") return cmd_ao(cfg);
  fail(ErrorCode::ConfigError, "unknown command '" + std::string(command) + "'");
}

}  // namespace qcayley
