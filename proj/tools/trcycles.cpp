// trcycles: compute correlators, verify invariants, localize global curves.
//
// Exit codes: 0 pass, 1 verification failure, 2 parse/usage, 3 admissibility,
// 4 precision. Errors go to stderr as one JSON object per line.

#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "trcycles/checks.hpp"

using namespace trc;

namespace {

enum Exit { kPass = 0, kVerifyFailed = 1, kParse = 2, kAdmissibility = 3, kPrecision = 4 };

struct RunConfig {
  std::string command;
  std::string curve, out, result, format = "json", perturb;
  std::optional<int> chi_max, hbar_max, deg_max, n_max;
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return kParse;
    case ErrorKind::InsufficientPrecision: return kPrecision;
    case ErrorKind::SymmetryViolation: return kVerifyFailed;
    default: return kAdmissibility;
  }
}

int report_error(const std::string& kind, const std::string& message, int code) {
  std::cerr << Json{{"error", kind}, {"message", message}, {"exit", code}}.dump() << "\n";
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f || !(f << text)) fail(ErrorKind::Parse, "cannot write " + cfg.out);
}

CurveData load_curve(const RunConfig& cfg) {
  CurveSpec spec = parse_curve_spec(read_file(cfg.curve));
  if (cfg.n_max) spec.n_max = *cfg.n_max;
  return build_curve(spec);
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string labels_text(const IndexTuple& idx) {
  std::string s;
  for (const auto& l : idx) s += l.to_string();
  return s;
}

// "D,(1,3),+1" or "C,(1,5)(1,1)(1,1),-1/2"
struct Perturbation {
  std::string tensor;
  IndexTuple key;
  Scalar delta;
};

Perturbation parse_perturb(const std::string& text) {
  const auto first = text.find(','), last = text.rfind(',');
  if (first == std::string::npos || first == last) fail(ErrorKind::Parse, "--perturb expects TENSOR,INDEX,DELTA");
  Perturbation p{text.substr(0, first), {}, Scalar::parse(text.substr(last + 1))};
  const std::string index = text.substr(first + 1, last - first - 1);
  static const std::regex label(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  std::sregex_iterator it(index.begin(), index.end(), label), end;
  std::size_t consumed = 0;
  for (; it != end; ++it) {
    if (static_cast<std::size_t>(it->position()) != consumed) fail(ErrorKind::Parse, "bad --perturb index '" + index + "'");
    p.key.push_back({std::stoi((*it)[1]), std::stoi((*it)[2])});
    consumed += it->length();
  }
  if (p.key.empty() || consumed != index.size()) fail(ErrorKind::Parse, "bad --perturb index '" + index + "'");
  return p;
}

Json compute_document(const CurveData& c, const OmegaTable& t) {
  Json j;
  j["version"] = kFormatVersion;
  j["curve_hash"] = t.curve_hash;
  j["omega_table"] = omega_table_to_json(t);
  if (c.max_order() == 2) j["airy_tensors"] = airy_tensors_to_json(compute_airy_tensors(c, t), t.curve_hash);
  Json fg = Json::array();
  for (int g = 2; 2 * g - 1 <= t.chi_max; ++g) fg.push_back({{"g", g}, {"value", compute_Fg(t, c, g).to_string()}});
  j["free_energies"] = fg;
  return j;
}

int cmd_compute(const RunConfig& cfg) {
  const CurveData c = load_curve(cfg);
  OmegaTable t = compute_omega_table(c, cfg.chi_max.value_or(3));
  t.curve_hash = curve_hash(c);
  const Json doc = compute_document(c, t);
  if (cfg.format == "json") {
    emit(cfg, dump(doc));
    return kPass;
  }
  std::ostringstream os;
  os << "curve " << t.curve_hash << "  chi_max " << t.chi_max << "\n";
  for (const auto& [gn, level] : t.levels)
    for (const auto& [idx, v] : level)
      os << pad("F_{" + std::to_string(gn.first) + "," + std::to_string(gn.second) + "}", 10) << pad(labels_text(idx), 36)
         << v.to_string() << "\n";
  for (const auto& f : doc["free_energies"])
    os << pad("F_" + std::to_string(f["g"].get<int>()), 46) << f["value"].get<std::string>() << "\n";
  emit(cfg, os.str());
  return kPass;
}

CheckResult check_result_file(const RunConfig& cfg, const CurveData& c, const OmegaTable& t) {
  CheckResult out{"result-file", CheckResult::Status::Pass, cfg.result, {}};
  const Json doc = detail::parse_text(read_file(cfg.result));
  if (detail::field(doc, "curve_hash") != t.curve_hash) out.flag("curve hash differs");
  const OmegaTable stored = omega_table_from_json(detail::field(doc, "omega_table"));
  OmegaTable mine = compute_omega_table(c, stored.chi_max);
  for (const auto& [gn, level] : stored.levels)
    if (!mine.has_level(gn.first, gn.second) || !(mine.level(gn.first, gn.second) == level))
      out.flag("F_{" + std::to_string(gn.first) + "," + std::to_string(gn.second) + "} differs");
  if (doc.contains("airy_tensors") && !(airy_tensors_from_json(doc["airy_tensors"]) == compute_airy_tensors(c, mine)))
    out.flag("ABCD tensors differ");
  return out;
}

int cmd_verify(const RunConfig& cfg) {
  const CurveData c = load_curve(cfg);
  const int r = c.max_order();
  const int hbar_max = cfg.hbar_max.value_or(r == 2 ? 4 : 3);
  const int deg_max = cfg.deg_max.value_or(4);
  const int chi_max = std::max(cfg.chi_max.value_or(hbar_max), hbar_max);
  std::optional<Perturbation> pert;
  if (!cfg.perturb.empty()) {
    pert = parse_perturb(cfg.perturb);
    if (r != 2) fail(ErrorKind::UnsupportedTensorForm, "--perturb needs order-2 points");
  }

  std::vector<CheckResult> checks;
  OmegaTable t;
  try {
    t = compute_omega_table(c, chi_max);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SymmetryViolation) throw;
    checks.push_back({"symmetry", CheckResult::Status::Fail, e.what(), {}});
  }
  t.curve_hash = curve_hash(c);
  if (checks.empty()) {
    checks.push_back(check_symmetry(c, t));
    checks.push_back(check_homogeneity(c, t, {Scalar(2), Scalar(-1), Scalar(Rational(1, 3))}));
    checks.push_back(check_dilaton(c, t, chi_max - 1));
    checks.push_back(check_hirota(c, t));
    if (r == 2) {
      AiryTensors at = compute_airy_tensors(c, t);
      if (pert) perturb_tensor(at, pert->tensor, pert->key, pert->delta);
      checks.push_back(check_engine_equivalence(c, t, at));
      checks.push_back(check_quadratic_pde(c, at, t, hbar_max, deg_max));
    } else {
      checks.push_back(detail::skipped("engine-equivalence", "tensor recursion needs order-2 points"));
      checks.push_back(detail::skipped("quadratic-pde", "quadratic operator needs order-2 points"));
    }
    for (auto& ch : check_higher_pde(c, t, hbar_max)) checks.push_back(std::move(ch));
    if (!cfg.result.empty()) checks.push_back(check_result_file(cfg, c, t));
  }

  bool ok = true;
  for (const auto& ch : checks) ok = ok && ch.passed();
  if (cfg.format == "json") {
    emit(cfg, dump(report_to_json(checks, t.curve_hash)));
  } else {
    std::ostringstream os;
    for (const auto& ch : checks) {
      os << pad(ch.name, 26) << pad(to_string(ch.status), 9) << ch.detail << "\n";
      for (const auto& o : ch.offending) os << "    " << o << "\n";
    }
    os << (ok ? "all checks pass" : "verification failed") << "\n";
    emit(cfg, os.str());
  }
  return ok ? kPass : kVerifyFailed;
}

int cmd_localize(const RunConfig& cfg) {
  const CurveData c = load_curve(cfg);
  const Json doc = curve_spec_to_json(local_spec(c));
  if (cfg.format == "json") {
    emit(cfg, dump(doc));
    return kPass;
  }
  std::ostringstream os;
  for (const auto& p : c.points()) {
    os << "point " << p.label << "  order " << p.order << "\n";
    for (const auto& [k, v] : p.times) os << "  t" << pad(std::to_string(k), 6) << v.to_string() << "\n";
  }
  for (const auto& [key, v] : c.curve().phi)
    os << "  phi" << pad(key.first.to_string() + key.second.to_string(), 14) << v.to_string() << "\n";
  emit(cfg, os.str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Topological recursion in local cycle coordinates"};
  app.require_subcommand(1);
  for (const char* name : {"compute", "verify", "localize"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--curve", cfg.curve, "curve spec (JSON)")->required();
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--n-max", cfg.n_max, "expansion order for global curves")->check(CLI::PositiveNumber);
    if (std::string(name) != "localize") sub->add_option("--chi-max", cfg.chi_max)->check(CLI::PositiveNumber);
    if (std::string(name) == "verify") {
      sub->add_option("--hbar-max", cfg.hbar_max)->check(CLI::PositiveNumber);
      sub->add_option("--deg-max", cfg.deg_max)->check(CLI::PositiveNumber);
      sub->add_option("--perturb", cfg.perturb, "TENSOR,INDEX,DELTA, e.g. D,(1,3),+1");
      sub->add_option("--result", cfg.result, "compute output to compare against");
    }
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what(), kParse);
  }

  try {
    if (cfg.command == "compute") return cmd_compute(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    return cmd_localize(cfg);
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const nlohmann::json::exception& e) {
    return report_error("parse", e.what(), kParse);
  }
}
