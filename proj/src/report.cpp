#include "padesr/report.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace padesr {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

void write_breakdown(std::ostream& os, const MseBreakdown& b, const PdeCase& pde) {
  os << "mse_interior=" << format_double(b.interior) << '\n';
  for (std::size_t i = 0; i < b.boundary.size(); ++i) {
    const std::string name = i < pde.bcs.size() ? pde.bcs[i].name : std::to_string(i);
    os << "mse_boundary." << name << '=' << format_double(b.boundary[i]) << '\n';
  }
  os << "mse_initial=" << format_double(b.initial) << '\n';
  os << "mse_total=" << format_double(b.total) << '\n';
  os << "gate_dTdx=" << format_double(b.gate[0]) << '\n';
  os << "gate_dTdy=" << format_double(b.gate[1]) << '\n';
  os << "gate_dTdt=" << format_double(b.gate[2]) << '\n';
  os << "gate_rejected=" << (b.gate_rejected ? "true" : "false") << '\n';
  os << "faulted=" << (b.faulted ? "true" : "false") << '\n';
  if (!b.diagnostic.empty()) os << "diagnostic=" << b.diagnostic << '\n';
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

}  // namespace

std::string format_report(const SearchResult& r, CaseId id, const DatasetOptions& data) {
  const SearchConfig& c = r.config;
  std::ostringstream os;
  os << "[config]\n";
  os << "case=" << to_string(id) << '\n';
  os << "algo=" << to_string(c.algorithm) << '\n';
  os << "depth=" << c.depth << '\n';
  os << "notation=" << to_string(c.notation) << '\n';
  os << "tokens=" << to_string(c.token_set) << '\n';
  os << "threads=" << c.threads << '\n';
  os << "time=" << format_double(c.time_budget) << '\n';
  os << "max-evals=" << c.max_evaluations << '\n';
  os << "seed=" << c.seed << '\n';
  os << "threshold=" << format_double(c.objective.threshold) << '\n';
  os << "gate-norm=" << to_string(c.objective.gate_norm) << '\n';
  os << "mesh=" << data.mesh.nx << ',' << data.mesh.ny << ',' << data.mesh.nt << '\n';
  os << "ic-derivatives=" << to_string(data.ic_derivatives) << '\n';
  if (data.initial_time) os << "ic-time=" << format_double(*data.initial_time) << '\n';
  os << "arithmetic=" << to_string(data.arithmetic) << '\n';
  if (c.seed_expr) os << "seed-expr=" << c.seed_expr->to_string() << '\n';

  os << "\n[result]\n";
  os << "empty=" << (r.empty ? "true" : "false") << '\n';
  if (!r.empty) {
    os << "expr=" << r.best->to_string() << '\n';
    os << "simplified=" << r.simplified->to_string() << '\n';
    os << "infix=" << render_infix(*r.best) << '\n';
    os << "simplified_infix=" << render_infix(*r.simplified) << '\n';
    os << "depth=" << r.best->depth() << '\n';
    os << "consts=" << join(r.consts) << '\n';
    write_breakdown(os, r.breakdown, make_case(id));
  } else {
    os << "mse_total=inf\n";
  }
  os << "elapsed=" << format_double(r.elapsed) << '\n';
  os << "evaluations=" << r.evaluations << '\n';
  os << "objective_calls=" << r.objective_calls << '\n';

  os << "\n[improvements]\n";
  for (std::size_t i = 0; i < r.improvements.size(); ++i)
    os << i << '=' << format_double(r.improvements[i].elapsed) << ',' << format_double(r.improvements[i].mse)
       << '\n';
  return os.str();
}

std::map<std::string, std::string> parse_report(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line, section;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    out[section.empty() ? key : section + "." + key] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace padesr
