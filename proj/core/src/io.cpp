#include "hofloq/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#ifndef HOFLOQ_VERSION
#define HOFLOQ_VERSION "unknown"
#endif

namespace hofloq {

using json = nlohmann::ordered_json;

std::string_view version() { return HOFLOQ_VERSION; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_plain(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + whole + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + whole + "'");
  return v;
}

}  // namespace

double parse_real(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  if (s.empty()) throw std::invalid_argument("empty number");
  const auto at = s.find("pi");
  double value;
  if (at == std::string::npos) {
    value = parse_plain(s, text);
  } else {
    std::string coef = s.substr(0, at);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    double c = 1.0;
    if (coef == "-") c = -1.0;
    else if (!coef.empty() && coef != "+") c = parse_plain(coef, text);
    const std::string rest = s.substr(at + 2);
    double den = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '/') throw std::invalid_argument("not a number: '" + text + "'");
      den = parse_plain(rest.substr(1), text);
      if (den == 0.0) throw std::invalid_argument("division by zero in '" + text + "'");
    }
    value = c * kPi / den;
  }
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite number: '" + text + "'");
  return value;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Protocol parse_protocol(const std::string& s) {
  if (s == "static") return Protocol::static_model;
  if (s == "kicked_v1" || s == "v1") return Protocol::kicked_v1;
  if (s == "kicked_v2" || s == "v2") return Protocol::kicked_v2;
  throw std::invalid_argument("unknown protocol '" + s + "'");
}

Boundary parse_boundary(const std::string& s) {
  if (s == "open" || s == "obc") return Boundary::open;
  if (s == "periodic" || s == "pbc") return Boundary::periodic;
  throw std::invalid_argument("unknown boundary condition '" + s + "'");
}

Frame parse_frame(const std::string& s) {
  if (s == "raw") return Frame::raw;
  if (s == "sym1") return Frame::sym1;
  if (s == "sym2") return Frame::sym2;
  throw std::invalid_argument("unknown frame '" + s + "'");
}

ScanAxes parse_axes(const std::string& s) {
  if (s == "theta_phi") return ScanAxes::theta_phi;
  if (s == "jx1_phi") return ScanAxes::jx1_phi;
  if (s == "jx0_jx1") return ScanAxes::jx0_jx1;
  throw std::invalid_argument("unknown scan axes '" + s + "'");
}

// --- RunConfig --------------------------------------------------------------------------

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    if (key.empty() || key.find('.') == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": keys are namespace.key");
    c.values_[key] = trim(t.substr(eq + 1));
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::invalid_argument("missing config key " + key);
  return it->second;
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double RunConfig::real_or(const std::string& key, double fallback) const {
  return has(key) ? parse_real(get(key)) : fallback;
}

long RunConfig::integer_or(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const std::string& s = get(key);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("integer expected for " + key + ", got '" + s + "'");
  return v;
}

// --- Parameters ---------------------------------------------------------------------

ModelParams parse_params(const std::map<std::string, std::string>& raw) {
  std::map<std::string, std::string> kv;
  for (const auto& [k, v] : raw) {
    std::string key = k.rfind("model.", 0) == 0 ? k.substr(6) : k;
    static const char* known[] = {"jx0", "jx1", "jy0", "jy1", "jx1p", "theta", "phi", "protocol"};
    bool ok = false;
    for (const char* n : known) ok = ok || key == n;
    if (!ok) throw std::invalid_argument("unknown model key '" + k + "'");
    if (kv.count(key)) throw std::invalid_argument("model key given twice: " + key);
    kv[key] = v;
  }
  ModelParams p;
  if (kv.count("protocol")) p.protocol = parse_protocol(kv["protocol"]);
  auto sector = [&](const char* angle, const char* j0, const char* j1, double& out0, double& out1,
                    bool x_sector) {
    const bool has_angle = kv.count(angle) != 0;
    const bool has_j = kv.count(j0) || kv.count(j1);
    if (has_angle && has_j)
      throw std::invalid_argument(std::string("over-specified: both ") + angle + " and " + j0 +
                                  "/" + j1 + " given");
    if (has_angle) {
      const double a = parse_real(kv[angle]);
      const ModelParams q = x_sector ? ModelParams::from_angles(a, 0.0) : ModelParams::from_angles(0.0, a);
      out0 = x_sector ? q.jx0 : q.jy0;
      out1 = x_sector ? q.jx1 : q.jy1;
      return;
    }
    if (!kv.count(j0) || !kv.count(j1))
      throw std::invalid_argument(std::string("under-specified: give ") + angle + " or both " + j0 +
                                  " and " + j1);
    out0 = parse_real(kv[j0]);
    out1 = parse_real(kv[j1]);
  };
  sector("theta", "jx0", "jx1", p.jx0, p.jx1, true);
  sector("phi", "jy0", "jy1", p.jy0, p.jy1, false);
  if (kv.count("jx1p")) {
    p.jx1p = parse_real(kv["jx1p"]);
  } else if (p.protocol == Protocol::kicked_v2) {
    throw std::invalid_argument("under-specified: the second protocol needs jx1p");
  }
  p.validate();
  return p;
}

// --- Writers -------------------------------------------------------------------------

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_spectrum_csv(const std::filesystem::path& path, const QuasienergySpectrum& spec) {
  std::string s = "index,quasienergy,ipr\n";
  for (std::size_t i = 0; i < spec.size(); ++i)
    s += std::to_string(i) + "," + format_real(spec.phases[i]) + "," + format_real(spec.iprs[i]) + "\n";
  write_text(path, s);
}

void write_modes_csv(const std::filesystem::path& path, const Basis& basis,
                     const std::vector<Vec>& modes) {
  std::string s = "cell_x,sub_x,cell_y,sub_y,probability,re,im\n";
  for (const Vec& v : modes) {
    if (static_cast<std::size_t>(v.size()) != basis.size())
      throw std::invalid_argument("mode length does not match basis");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const BasisLabel l = basis.label(i);
      const cplx a = v(static_cast<Eigen::Index>(i));
      s += std::to_string(l.x.cell) + "," + std::string(to_string(l.x.sub)) + ",";
      s += l.y ? std::to_string(l.y->cell) + "," + std::string(to_string(l.y->sub)) : std::string(",");
      s += "," + format_real(std::norm(a)) + "," + format_real(a.real()) + "," + format_real(a.imag()) + "\n";
    }
  }
  write_text(path, s);
}

void write_scan_csv(const std::filesystem::path& path, const ScanGrid& grid) {
  const auto names = axis_names(grid.spec.axes);
  std::string s = names[0] + "," + names[1] + ",omega_0,omega_pi,gap0,gap_pi\n";
  for (const auto& pt : grid.points) {
    s += format_real(pt.a) + "," + format_real(pt.b) + "," + std::to_string(pt.omega[0]) + "," +
         std::to_string(pt.omega[1]) + ",";
    s += pt.gaps ? format_real(pt.gaps->gap0) + "," + format_real(pt.gaps->gap_pi) : std::string("nan,nan");
    s += "\n";
  }
  write_text(path, s);
}

namespace {

json real(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

json params_json(const ModelParams& p) {
  json j;
  j["protocol"] = std::string(to_string(p.protocol));
  j["jx0"] = p.jx0;
  j["jx1"] = p.jx1;
  j["jy0"] = p.jy0;
  j["jy1"] = p.jy1;
  if (p.protocol == Protocol::kicked_v2) j["jx1p"] = p.jx1p;
  return j;
}

json report_json(const InvariantReport& r) {
  json j;
  j["params"] = params_json(r.params);
  j["w_pair"] = {real(r.w_pair[0]), real(r.w_pair[1])};
  j["omega_pair"] = {r.omega_pair[0], r.omega_pair[1]};
  j["frame_omegas"] = {r.frame_omegas[0], r.frame_omegas[1]};
  if (r.omega_y) j["omega_y"] = *r.omega_y;
  j["closing_flag"] = std::string(to_string(r.closing_flag));
  j["gaps"] = {{"gap0", real(r.gap_report.gap0)}, {"gap_pi", real(r.gap_report.gap_pi)}};
  j["method"] = r.method;
  j["predicted_N"] = {r.predicted_n[0], r.predicted_n[1]};
  j["notes"] = r.notes;
  return j;
}

json verdict_json(const BccVerdict& v) {
  json j;
  j["params"] = params_json(v.params);
  j["omega_pair"] = {v.omega[0], v.omega[1]};
  j["closing_flag"] = std::string(to_string(v.closing));
  j["predicted_N"] = {v.predicted[0], v.predicted[1]};
  j["observed_N"] = {v.observed[0], v.observed[1]};
  if (v.edge_tail) j["edge_tail"] = *v.edge_tail;
  j["pass"] = v.pass;
  return j;
}

}  // namespace

std::string invariant_json(const InvariantReport& r, const std::optional<BccVerdict>& verdict) {
  json j = report_json(r);
  if (verdict) {
    j["observed_N"] = {verdict->observed[0], verdict->observed[1]};
    j["pass"] = verdict->pass;
  }
  return j.dump(2) + "\n";
}

std::string verdicts_json(const std::vector<BccVerdict>& verdicts) {
  json j = json::array();
  bool all = true;
  for (const auto& v : verdicts) {
    j.push_back(verdict_json(v));
    all = all && v.pass;
  }
  json out;
  out["verdicts"] = j;
  out["pass"] = all;
  return out.dump(2) + "\n";
}

// --- OutputTransaction -------------------------------------------------------------------

OutputTransaction::OutputTransaction(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!std::filesystem::exists(dir_)) {
    std::filesystem::create_directories(dir_);
    created_dir_ = true;
  }
}

OutputTransaction::~OutputTransaction() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& f : files_) std::filesystem::remove(f, ec);
  if (created_dir_) std::filesystem::remove_all(dir_, ec);
}

std::filesystem::path OutputTransaction::file(const std::string& name) {
  auto path = dir_ / name;
  files_.push_back(path);
  return path;
}

}  // namespace hofloq
