#include "hofloq/invariants.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "hofloq/errors.hpp"

namespace hofloq {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::cl_static: return "cl_static";
    case Provenance::ssh_static: return "ssh_static";
    case Provenance::kicked_f1x: return "kicked_f1x";
    case Provenance::kicked_f2x: return "kicked_f2x";
    case Provenance::numeric_fft: return "numeric_fft";
  }
  return "?";
}

std::string_view to_string(ClosingFlag c) {
  switch (c) {
    case ClosingFlag::gapped: return "gapped";
    case ClosingFlag::zero_closing: return "zero_closing";
    case ClosingFlag::pi_closing: return "pi_closing";
    case ClosingFlag::both_closing: return "both_closing";
  }
  return "?";
}

cplx MappingFunction::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = numerator.rbegin(); it != numerator.rend(); ++it) acc = acc * z + *it;
  return acc / std::pow(z, pole_order);
}

// --- Winding numbers ----------------------------------------------------------------

Winding winding_integral(std::span<const cplx> samples) {
  if (samples.size() < 64) throw std::invalid_argument("winding_integral needs >= 64 samples");
  Winding w;
  // Samples sitting on a zero carry no phase, and the step across them is a jump of
  // +-pi of undefined sign; leaving both out gives the principal-value integral, which is
  // the half-integer value at criticality.
  double scale = 0.0;
  for (const cplx& g : samples) scale = std::max(scale, std::abs(g));
  if (scale == 0.0) throw std::invalid_argument("winding_integral: function vanishes identically");
  auto live = [&](std::size_t j) { return std::abs(samples[j % samples.size()]) > 1e-12 * scale; };
  double total = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    if (!live(j) || !live(j + 1)) {
      w.resolved = false;
      continue;
    }
    const cplx a = samples[j];
    const cplx b = samples[(j + 1) % samples.size()];
    const double step = std::arg(b * std::conj(a));
    if (std::abs(step) > kPi / 2) w.resolved = false;
    total += step;
  }
  w.value = total / kTwoPi;
  return w;
}

namespace {

/// d_x + i d_z of U = d_0 - i d.sigma.
cplx floquet_vector(const Mat2& u) {
  const cplx dx = 0.5 * kI * (pauli::x() * u).trace();
  const cplx dz = 0.5 * kI * (pauli::z() * u).trace();
  return dx + kI * dz;
}

cplx sector_sample(Chain chain, const ModelParams& p, Frame frame, double k) {
  if (chain == Chain::ssh) return bloch_hy(k, p).matrix(1, 0);
  if (p.protocol == Protocol::static_model) {
    const Mat h = bloch_hx(k, p).matrix;
    return h(0, 1).real() + kI * h(0, 0).real();
  }
  return floquet_vector(floquet_x_bloch(k, p, frame).matrix);
}

}  // namespace

Winding sector_winding(Chain chain, const ModelParams& p, Frame frame, int grid) {
  std::vector<cplx> g(grid);
  for (int j = 0; j < grid; ++j) g[j] = sector_sample(chain, p, frame, -kPi + kTwoPi * j / grid);
  return winding_integral(g);
}

// --- Mapping functions --------------------------------------------------------------

MappingFunction numeric_mapping(const ModelParams& p, Frame frame) {
  static std::mutex planner_mutex;  // FFTW planning is not thread-safe
  constexpr double kTruncate = 1e-12;
  for (int m = 10; m <= 16; ++m) {
    const int n = 1 << m;
    std::vector<cplx> in(n), out(n);
    for (int j = 0; j < n; ++j) in[j] = sector_sample(Chain::creutz, p, frame, kTwoPi * j / n);
    fftw_plan plan;
    {
      std::lock_guard lock(planner_mutex);
      plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                              reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                              FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
      std::lock_guard lock(planner_mutex);
      fftw_destroy_plan(plan);
    }
    auto coeff = [&](int k) { return out[(k + n) % n] / static_cast<double>(n); };
    double tail = 0.0;
    for (int k = -n / 2; k < n / 2; ++k)
      if (std::abs(k) >= n / 4) tail = std::max(tail, std::abs(coeff(k)));
    if (tail > 1e-10) continue;
    int kmin = n, kmax = -n;
    for (int k = -n / 2; k < n / 2; ++k)
      if (std::abs(coeff(k)) >= kTruncate) {
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
    if (kmin > kmax) throw std::invalid_argument("mapping function vanishes identically");
    MappingFunction f;
    f.provenance = Provenance::numeric_fft;
    f.pole_order = std::max(0, -kmin);
    f.numerator.assign(kmax + f.pole_order + 1, cplx(0.0));
    for (int k = std::max(kmin, -f.pole_order); k <= kmax; ++k) {
      const cplx c = coeff(k);
      if (std::abs(c) >= kTruncate) f.numerator[k + f.pole_order] = c;
    }
    return f;
  }
  throw std::runtime_error("Laurent truncation failed: coefficients above 1e-10 at 2^16 points");
}

MappingFunction build_mapping(Chain chain, const ModelParams& p, Frame frame) {
  if (chain == Chain::ssh) return {{cplx(p.jy0), cplx(p.jy1)}, 0, Provenance::ssh_static};
  switch (p.protocol) {
    case Protocol::static_model:
      return {{cplx(p.jx0), cplx(p.jx1)}, 0, Provenance::cl_static};
    case Protocol::kicked_v1: {
      const double s0 = std::sin(p.jx0), c0 = std::cos(p.jx0);
      const double s1 = std::sin(p.jx1), c1 = std::cos(p.jx1);
      auto sq = [](double x) { return x * x; };
      if (frame == Frame::sym1)
        return {{s0 * sq(std::cos(p.jx1 / 2)), c0 * s1, -s0 * sq(std::sin(p.jx1 / 2))},
                0,
                Provenance::kicked_f1x};
      if (frame == Frame::sym2)
        return {{0.0, -s1 * sq(std::sin(p.jx0 / 2)), c1 * s0, s1 * sq(std::cos(p.jx0 / 2))},
                2,
                Provenance::kicked_f2x};
      throw std::invalid_argument("mapping functions are defined in the symmetric frames");
    }
    case Protocol::kicked_v2:
      if (frame == Frame::raw)
        throw std::invalid_argument("mapping functions are defined in the symmetric frames");
      return numeric_mapping(p, frame);
  }
  throw std::invalid_argument("unknown protocol");
}

int zero_pole_invariant(const MappingFunction& f, ClosingFlag closing) {
  constexpr double kAnnulus = 1e-7;
  int zeros = 0;
  for (const cplx& z : polynomial_roots(f.numerator)) {
    const double r = std::abs(z);
    if (std::abs(r - 1.0) < kAnnulus) {
      if (closing == ClosingFlag::gapped)
        throw std::invalid_argument("mapping function has a zero on the unit circle in a gapped phase");
      continue;
    }
    if (r < 1.0 - kAnnulus) ++zeros;
  }
  if (closing == ClosingFlag::pi_closing || closing == ClosingFlag::both_closing) {
    if (f.pole_order % 2 != 0)
      throw ConsistencyError("half-integer zero/pole invariant for representation " +
                             std::string(to_string(f.provenance)));
    return zeros - f.pole_order / 2;
  }
  return zeros - f.pole_order;
}

// --- Gap closings ---------------------------------------------------------------------

ClosingFlag combine(ClosingFlag a, ClosingFlag b) {
  const bool zero = a == ClosingFlag::zero_closing || a == ClosingFlag::both_closing ||
                    b == ClosingFlag::zero_closing || b == ClosingFlag::both_closing;
  const bool pi = a == ClosingFlag::pi_closing || a == ClosingFlag::both_closing ||
                  b == ClosingFlag::pi_closing || b == ClosingFlag::both_closing;
  if (zero && pi) return ClosingFlag::both_closing;
  if (zero) return ClosingFlag::zero_closing;
  if (pi) return ClosingFlag::pi_closing;
  return ClosingFlag::gapped;
}

namespace {

constexpr double kLocusTol = 1e-9;

ClosingFlag parity_gap(int n) {
  return ((n % 2) + 2) % 2 == 0 ? ClosingFlag::zero_closing : ClosingFlag::pi_closing;
}

}  // namespace

std::vector<GapClosing> gap_closing_locus(const ModelParams& p, int window) {
  std::vector<GapClosing> out;
  if (p.protocol == Protocol::kicked_v1) {
    for (int sign : {+1, -1}) {
      const double x = (p.jx0 + sign * p.jx1) / kPi;
      const double nu = std::round(x);
      if (std::abs(x - nu) < kLocusTol)
        out.push_back({static_cast<int>(nu), sign, parity_gap(static_cast<int>(nu))});
    }
  } else if (p.protocol == Protocol::kicked_v2) {
    if (p.jx1 == 0.0 || p.jx1p == 0.0) return out;
    for (int mu = -window; mu <= window; ++mu)
      for (int nu = -window; nu <= window; ++nu) {
        const double lhs = std::pow((mu * kPi - p.jx0) / p.jx1, 2) + std::pow(nu * kPi / p.jx1p, 2);
        if (std::abs(lhs - 1.0) < kLocusTol)
          out.push_back({mu, nu, parity_gap(mu + nu)});
      }
  } else {
    throw std::invalid_argument("gap_closing_locus needs a kicked protocol");
  }
  return out;
}

std::vector<CriticalValue> v2_critical_jx1(double jx0, double jx1p, double jx1_max, int window) {
  std::vector<CriticalValue> raw;
  for (int mu = -window; mu <= window; ++mu)
    for (int nu = -window; nu <= window; ++nu) {
      const double rest = 1.0 - std::pow(nu * kPi / jx1p, 2);
      if (rest <= 0.0) continue;
      const double j = std::abs(mu * kPi - jx0) / std::sqrt(rest);
      if (j > 0.0 && j <= jx1_max) raw.push_back({j, parity_gap(mu + nu)});
    }
  std::sort(raw.begin(), raw.end(),
            [](const CriticalValue& a, const CriticalValue& b) { return a.jx1 < b.jx1; });
  std::vector<CriticalValue> out;
  for (const auto& c : raw) {
    if (!out.empty() && std::abs(out.back().jx1 - c.jx1) < 1e-12)
      out.back().gap = combine(out.back().gap, c.gap);
    else
      out.push_back(c);
  }
  return out;
}

GapReport bloch_gaps(const ModelParams& p, int grid) {
  GapReport g{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (int j = 0; j < grid; ++j) {
    const double k = -kPi + kTwoPi * j / grid;
    if (p.protocol == Protocol::static_model) {
      const Mat h = bloch_hx(k, p).matrix;
      g.gap0 = std::min(g.gap0, std::hypot(std::abs(h(0, 0)), std::abs(h(0, 1))));
      continue;
    }
    const Mat2 u = floquet_x_bloch(k, p).matrix;
    // U = d0 - i d.sigma with eigenphases +/- atan2(|d|, d0).
    const double d0 = 0.5 * u.trace().real();
    double dn = 0.0;
    for (const Mat2& s : {pauli::x(), pauli::y(), pauli::z()})
      dn += std::norm(0.5 * kI * (s * u).trace());
    const double eps = std::atan2(std::sqrt(dn), d0);
    g.gap0 = std::min(g.gap0, eps);
    g.gap_pi = std::min(g.gap_pi, kPi - eps);
  }
  return g;
}

ClosingFlag sector_closing(Chain chain, const ModelParams& p) {
  auto equal_magnitude = [](double a, double b) {
    return std::abs(std::abs(a) - std::abs(b)) < kLocusTol * std::max(1.0, std::abs(a));
  };
  if (chain == Chain::ssh)
    return equal_magnitude(p.jy0, p.jy1) ? ClosingFlag::zero_closing : ClosingFlag::gapped;
  switch (p.protocol) {
    case Protocol::static_model:
      return equal_magnitude(p.jx0, p.jx1) ? ClosingFlag::zero_closing : ClosingFlag::gapped;
    case Protocol::kicked_v1: {
      ClosingFlag flag = ClosingFlag::gapped;
      for (const auto& c : gap_closing_locus(p)) flag = combine(flag, c.gap);
      return flag;
    }
    case Protocol::kicked_v2: {
      const GapReport g = bloch_gaps(p, 4096);
      ClosingFlag flag = ClosingFlag::gapped;
      if (g.gap0 < 1e-6) flag = combine(flag, ClosingFlag::zero_closing);
      if (g.gap_pi < 1e-6) flag = combine(flag, ClosingFlag::pi_closing);
      return flag;
    }
  }
  throw std::invalid_argument("unknown protocol");
}

std::array<int, 2> closed_form_kicked_table(const ModelParams& p) {
  if (p.protocol != Protocol::kicked_v1)
    throw std::invalid_argument("closed-form table applies to the first kicked protocol");
  constexpr double kTol = 1e-12;
  const double a = p.jx0 / 2, b = p.jx1 / 2;
  // |tan b| > |tan a|  and  |tan a tan b| > 1, multiplied through by the cosines.
  const bool ratio = std::abs(std::sin(b) * std::cos(a)) - std::abs(std::sin(a) * std::cos(b)) > kTol;
  const bool product = std::abs(std::sin(a) * std::sin(b)) - std::abs(std::cos(a) * std::cos(b)) > kTol;
  return {ratio ? 1 : 0, product ? 1 : 0};
}

// --- Reports ---------------------------------------------------------------------------

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool closes_zero(ClosingFlag c) {
  return c == ClosingFlag::zero_closing || c == ClosingFlag::both_closing;
}
bool closes_pi(ClosingFlag c) {
  return c == ClosingFlag::pi_closing || c == ClosingFlag::both_closing;
}

std::array<int, 2> combine_frames(int w1, int w2) {
  if ((w1 + w2) % 2 != 0)
    throw ConsistencyError("frame invariants of different parity: " + std::to_string(w1) +
                           ", " + std::to_string(w2));
  return {(w1 + w2) / 2, (w1 - w2) / 2};
}

Winding resolved_winding(Chain chain, const ModelParams& p, Frame frame) {
  for (int grid = 4096; grid <= (1 << 16); grid *= 2) {
    const Winding w = sector_winding(chain, p, frame, grid);
    if (w.resolved) return w;
  }
  return sector_winding(chain, p, frame, 1 << 16);
}

void fill_windings(InvariantReport& r) {
  if (r.closing_flag != ClosingFlag::gapped) {
    r.w_pair = {kNaN, kNaN};
    return;
  }
  const Winding w1 = resolved_winding(Chain::creutz, r.params, Frame::sym1);
  const Winding w2 = resolved_winding(Chain::creutz, r.params, Frame::sym2);
  r.w_pair = {(w1.value + w2.value) / 2, (w1.value - w2.value) / 2};
  for (int g = 0; g < 2; ++g)
    if (std::abs(r.w_pair[g] - r.omega_pair[g]) > 1e-6)
      throw ConsistencyError("winding integral disagrees with zero/pole counting");
}

InvariantReport zero_pole_report(const ModelParams& p, ClosingFlag closing) {
  InvariantReport r;
  r.params = p;
  r.closing_flag = closing;
  r.method = "zero_pole";
  r.frame_omegas = {zero_pole_invariant(build_mapping(Chain::creutz, p, Frame::sym1), closing),
                    zero_pole_invariant(build_mapping(Chain::creutz, p, Frame::sym2), closing)};
  r.omega_pair = combine_frames(r.frame_omegas[0], r.frame_omegas[1]);
  return r;
}

std::array<int, 2> gapped_pair(const ModelParams& p) {
  const ClosingFlag c = sector_closing(Chain::creutz, p);
  if (c != ClosingFlag::gapped)
    throw std::invalid_argument("limiting rule: neighbouring point is not gapped");
  return zero_pole_report(p, c).omega_pair;
}

}  // namespace

std::array<int, 2> limiting_rule(const ModelParams& p, double offset) {
  const ClosingFlag c = sector_closing(Chain::creutz, p);
  ModelParams lo = p, hi = p;
  lo.jx1 -= offset;
  hi.jx1 += offset;
  const auto a = gapped_pair(lo);
  const auto b = gapped_pair(hi);
  std::array<int, 2> out{};
  const bool closing[2] = {closes_zero(c), closes_pi(c)};
  for (int g = 0; g < 2; ++g) {
    if (closing[g]) {
      out[g] = std::min(std::abs(a[g]), std::abs(b[g]));
    } else {
      if (std::abs(a[g]) != std::abs(b[g]))
        throw ConsistencyError("limiting rule: non-closing gap changes across the critical line");
      out[g] = std::abs(a[g]);
    }
  }
  return out;
}

InvariantReport kicked_invariants(const ModelParams& p) {
  p.validate();
  if (p.protocol == Protocol::static_model)
    throw std::invalid_argument("kicked_invariants needs a kicked protocol");
  const ClosingFlag closing = sector_closing(Chain::creutz, p);
  InvariantReport r;
  if (p.protocol == Protocol::kicked_v1 || closing == ClosingFlag::gapped) {
    r = zero_pole_report(p, closing);
    if (p.protocol == Protocol::kicked_v1) {
      const auto table = closed_form_kicked_table(p);
      if (std::abs(r.omega_pair[0]) != table[0] || std::abs(r.omega_pair[1]) != table[1])
        throw ConsistencyError("closed-form table disagrees with zero/pole counting");
    }
  } else {
    r.params = p;
    r.closing_flag = closing;
    r.method = "limiting_rule";
    r.omega_pair = limiting_rule(p);
    r.frame_omegas = {r.omega_pair[0] + r.omega_pair[1], r.omega_pair[0] - r.omega_pair[1]};
    try {
      const InvariantReport zp = zero_pole_report(p, closing);
      if (std::abs(zp.omega_pair[0]) != r.omega_pair[0] ||
          std::abs(zp.omega_pair[1]) != r.omega_pair[1])
        r.notes.push_back("zero/pole counting on the numeric representation gives (" +
                          std::to_string(zp.omega_pair[0]) + ", " +
                          std::to_string(zp.omega_pair[1]) + ")");
    } catch (const std::exception& e) {
      r.notes.push_back(std::string("zero/pole counting unavailable: ") + e.what());
    }
  }
  r.gap_report = bloch_gaps(p);
  fill_windings(r);
  r.predicted_n = {4 * std::abs(r.omega_pair[0]), 4 * std::abs(r.omega_pair[1])};
  return r;
}

InvariantReport composite_invariants(const ModelParams& p) {
  p.validate();
  const ClosingFlag y_closing = sector_closing(Chain::ssh, p);
  const int omega_y = zero_pole_invariant(build_mapping(Chain::ssh, p), y_closing);
  InvariantReport r;
  if (p.protocol == Protocol::static_model) {
    const ClosingFlag x_closing = sector_closing(Chain::creutz, p);
    const int omega_x = zero_pole_invariant(build_mapping(Chain::creutz, p), x_closing);
    r.params = p;
    r.method = "zero_pole";
    r.closing_flag = combine(x_closing, y_closing);
    r.frame_omegas = {omega_x, omega_y};
    r.omega_pair = {std::abs(omega_x * omega_y), 0};
    r.gap_report = bloch_gaps(p);
    if (r.closing_flag == ClosingFlag::gapped) {
      const double wx = resolved_winding(Chain::creutz, p, Frame::raw).value;
      const double wy = resolved_winding(Chain::ssh, p, Frame::raw).value;
      r.w_pair = {wx * wy, 0.0};
    } else {
      r.w_pair = {kNaN, 0.0};
    }
  } else {
    r = kicked_invariants(p);
    r.omega_pair = {std::abs(r.omega_pair[0] * omega_y), std::abs(r.omega_pair[1] * omega_y)};
    if (y_closing == ClosingFlag::gapped) {
      const double wy = resolved_winding(Chain::ssh, p, Frame::raw).value;
      r.w_pair = {std::abs(r.w_pair[0] * wy), std::abs(r.w_pair[1] * wy)};
    } else {
      r.w_pair = {kNaN, kNaN};
    }
    r.closing_flag = combine(r.closing_flag, y_closing);
  }
  r.omega_y = omega_y;
  r.predicted_n = {4 * r.omega_pair[0], 4 * r.omega_pair[1]};
  return r;
}

}  // namespace hofloq
