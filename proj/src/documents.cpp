#include <cmath>

#include "json.hpp"
#include "unipsd/io.hpp"

namespace unipsd::io {
namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const Complex& z : v) out.push_back(complex_json(z));
  return out;
}

json indices_json(const IndexSet& idx) {
  json out = json::array();
  for (Index i : idx) out.push_back(i + 1);
  return out;
}

json tolerance_json(const ToleranceConfig& t) {
  return {{"eps_herm", t.eps_herm}, {"eps_mod", t.eps_mod}, {"eps_rank", t.eps_rank},
          {"eps_residual", t.eps_residual}};
}

json certificate_json(const Certificate& c) {
  json blocks = json::array();
  for (const IndexSet& b : c.blocks) blocks.push_back(indices_json(b));
  return {{"document", "certificate"},
          {"n", c.n},
          {"blocks", std::move(blocks)},
          {"zero_set", indices_json(c.zero_set)},
          {"phases", vector_json(c.phases)},
          {"tolerance_used", tolerance_json(c.tolerance_used)},
          {"canonical", c.is_canonical()}};
}

json sparse_json(const DenseMatrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex{}) out.push_back(json::array({i + 1, j + 1, complex_json(m(i, j))}));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

[[noreturn]] void schema_error(const std::string& what) {
  throw IoError("certificate document: " + what);
}

const json& member(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) schema_error(std::string(what) + " must be a number");
  return j.get<double>();
}

Index one_based(const json& j, Index n) {
  if (!j.is_number_unsigned()) schema_error("indices must be positive integers");
  const auto v = j.get<std::uint64_t>();
  if (v < 1 || v > n) schema_error("index " + std::to_string(v) + " out of range");
  return static_cast<Index>(v - 1);
}

IndexSet index_array(const json& j, Index n) {
  if (!j.is_array()) schema_error("index lists must be arrays");
  IndexSet out;
  for (const json& v : j) out.push_back(one_based(v, n));
  return out;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Accepted: return "accepted";
    case Verdict::NotPsd: return "not_psd";
    case Verdict::OutOfClass: return "out_of_class";
    case Verdict::NotHermitian: return "not_hermitian";
    case Verdict::IoError: return "io_error";
  }
  return "?";
}

RunReport make_report(const Recognition& r, const HermitianMatrix& a) {
  RunReport rep;
  rep.tolerance_used = a.tolerance();
  if (const auto* cert = std::get_if<Certificate>(&r)) {
    rep.verdict = Verdict::Accepted;
    rep.certificate = *cert;
    rep.diagnostics = std::to_string(cert->blocks.size()) + " block(s), zero set of size " +
                      std::to_string(cert->zero_set.size());
    return rep;
  }
  const Rejection& rej = std::get<Rejection>(r);
  switch (rej.reason) {
    case RejectionReason::NotPSD:
      rep.verdict = Verdict::NotPsd;
      rep.witness = rej.witness;
      rep.witness_value = quadratic_form(a, rej.witness);
      break;
    case RejectionReason::OutOfClass: rep.verdict = Verdict::OutOfClass; break;
    case RejectionReason::NotHermitian: rep.verdict = Verdict::NotHermitian; break;
  }
  rep.offending_indices = rej.offending_indices;
  rep.diagnostics = rej.detail;
  return rep;
}

RunReport make_report(const NotHermitianError& e, const ToleranceConfig& tol) {
  RunReport rep;
  rep.verdict = Verdict::NotHermitian;
  rep.offending_indices = {e.row(), e.col()};
  rep.diagnostics = e.what();
  rep.tolerance_used = tol;
  return rep;
}

RunReport make_report(const IoError& e, const ToleranceConfig& tol) {
  RunReport rep;
  rep.verdict = Verdict::IoError;
  rep.diagnostics = e.what();
  rep.tolerance_used = tol;
  return rep;
}

std::string emit(const Certificate& c) { return dump(certificate_json(c)); }

std::string emit(const RunReport& r) {
  json j = {{"document", "run_report"},
            {"verdict", to_string(r.verdict)},
            {"diagnostics", r.diagnostics},
            {"offending_indices", indices_json(r.offending_indices)},
            {"tolerance_used", tolerance_json(r.tolerance_used)}};
  if (r.certificate) j["certificate"] = certificate_json(*r.certificate);
  if (r.witness) j["witness"] = vector_json(*r.witness);
  if (r.witness_value) j["witness_quadratic_form"] = *r.witness_value;
  return dump(j);
}

std::string emit(const PsrpReport& r) {
  json failures = json::array();
  for (const PsrpFailure& f : r.failures) {
    failures.push_back({{"subset", indices_json(f.subset)},
                        {"condition", to_string(f.condition)},
                        {"rank_principal", f.rank_principal},
                        {"rank_strip", f.rank_strip}});
  }
  return dump({{"document", "psrp_report"},
               {"mode", to_string(r.mode)},
               {"subsets_checked", r.subsets_checked},
               {"failures", std::move(failures)},
               {"passed", r.passed}});
}

std::string emit(const FactorPair& f, const FactorizationReport& check) {
  json violations = json::array();
  for (const PatternViolation& v : check.pattern_violations) {
    violations.push_back(json::array({std::string(1, v.factor), v.row + 1, v.col + 1}));
  }
  json j = {{"document", "factorization"},
            {"kind", to_string(f.kind)},
            {"n", f.lower.rows()},
            {"L", sparse_json(f.lower)},
            {"verification",
             {{"residual", check.residual},
              {"residual_bound", check.residual_bound},
              {"pattern_violations", std::move(violations)},
              {"modulus_violations", check.modulus_violations},
              {"passed", check.passed}}}};
  if (f.upper) j["U"] = sparse_json(*f.upper);
  return dump(j);
}

std::string emit(const OracleVerdict& v) {
  json j = {{"document", "oracle_verdict"},
            {"psd", v.psd},
            {"min_eigenvalue", v.min_eigenvalue},
            {"threshold", v.threshold},
            {"eigenvalues", v.eigenvalues}};
  if (v.witness) j["witness"] = vector_json(*v.witness);
  return dump(j);
}

std::string emit(const CertificateCheck& c) {
  return dump({{"document", "certificate_check"},
               {"max_deviation", c.max_deviation},
               {"tolerance", c.tolerance},
               {"passed", c.passed}});
}

Certificate parse_certificate(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw IoError(std::string("certificate document is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_error("top level must be an object");
  if (auto it = j.find("document"); it != j.end() && *it != "certificate") {
    schema_error("document type is not 'certificate'");
  }

  Certificate c;
  const json& n = member(j, "n");
  if (!n.is_number_unsigned()) schema_error("n must be a non-negative integer");
  c.n = n.get<Index>();

  const json& blocks = member(j, "blocks");
  if (!blocks.is_array()) schema_error("blocks must be an array");
  for (const json& b : blocks) c.blocks.push_back(index_array(b, c.n));
  c.zero_set = index_array(member(j, "zero_set"), c.n);

  const json& phases = member(j, "phases");
  if (!phases.is_array()) schema_error("phases must be an array");
  for (const json& p : phases) {
    if (!p.is_array() || p.size() != 2) schema_error("phases must be [re, im] pairs");
    c.phases.emplace_back(number(p[0], "phase"), number(p[1], "phase"));
  }

  const json& tol = member(j, "tolerance_used");
  if (!tol.is_object()) schema_error("tolerance_used must be an object");
  c.tolerance_used.eps_herm = number(member(tol, "eps_herm"), "eps_herm");
  c.tolerance_used.eps_mod = number(member(tol, "eps_mod"), "eps_mod");
  c.tolerance_used.eps_rank = number(member(tol, "eps_rank"), "eps_rank");
  c.tolerance_used.eps_residual = number(member(tol, "eps_residual"), "eps_residual");
  try {
    c.tolerance_used.validate();
  } catch (const std::invalid_argument& e) {
    schema_error(e.what());
  }

  c.validate();
  if (auto it = j.find("canonical"); it != j.end()) {
    if (!it->is_boolean()) schema_error("canonical must be a boolean");
    if (it->get<bool>() != c.is_canonical()) {
      throw MalformedCertificate("canonical flag does not match the certificate content");
    }
  }
  return c;
}

}  // namespace unipsd::io
