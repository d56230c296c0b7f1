#include "psilab/sign_change.hpp"

#include <cmath>
#include <utility>

#include "psilab/common.hpp"

namespace psilab {

const char* to_string(SignChangeStatus s) {
  switch (s) {
    case SignChangeStatus::Located:
      return "Located";
    case SignChangeStatus::ExactZero:
      return "ExactZero";
    case SignChangeStatus::Plateau:
      return "Plateau";
    case SignChangeStatus::NoBracket:
      return "NoBracket";
  }
  return "Unknown";
}

namespace {

struct WalkResult {
  bool found = false;
  double t = 0.0;
  double f = 0.0;
};

// Probes from seed toward the end of the domain given by dir (+1 right,
// -1 left) until pred(f(t)) holds. A bounded end is approached by halving
// the remaining distance; toward an unbounded end the offset from seed
// grows geometrically. Stops early when the probe stops moving (no
// representable points left).
template <class Pred>
WalkResult walk_for_sign(const RealFn& f, const ParameterInterval& domain,
                         double seed, int dir, const Tolerances& tol,
                         long& evaluations, std::vector<double>& probes,
                         Pred pred) {
  const double end = dir > 0 ? domain.hi : domain.lo;
  const bool bounded = std::isfinite(end);
  double offset = 1.0;
  double prev = seed;
  for (int step = 0; step < tol.max_bracket_steps; ++step) {
    double t;
    if (bounded) {
      t = prev + (end - prev) / 2.0;
    } else {
      t = seed + dir * offset;
      offset *= tol.bracket_growth;
    }
    if (t == prev || !domain.contains(t)) break;
    double ft = f(t);
    ++evaluations;
    probes.push_back(t);
    if (pred(ft)) return {true, t, ft};
    prev = t;
  }
  return {};
}

}  // namespace

BracketOutcome bracket_sign_change(const RealFn& f, ParameterInterval domain,
                                   double seed, const Tolerances& tol) {
  tol.validate();
  if (!domain.contains(seed)) {
    throw error("bracket_sign_change: seed " + format_double(seed) +
                " lies outside " + domain.to_string());
  }

  BracketOutcome out;
  double fs = f(seed);
  out.evaluations = 1;
  out.probes.push_back(seed);

  WalkResult pos{fs > 0.0, seed, fs};
  if (!pos.found) {
    pos = walk_for_sign(f, domain, seed, -1, tol, out.evaluations, out.probes,
                        [](double v) { return v > 0.0; });
  }
  WalkResult neg{fs < 0.0, seed, fs};
  if (!neg.found) {
    neg = walk_for_sign(f, domain, seed, +1, tol, out.evaluations, out.probes,
                        [](double v) { return v < 0.0; });
  }

  if (pos.found && neg.found && pos.t < neg.t) {
    out.found = true;
    out.lo = pos.t;
    out.hi = neg.t;
    out.f_lo = pos.f;
    out.f_hi = neg.f;
  }
  return out;
}

SignChangeResult find_sign_change(const RealFn& f, ParameterInterval domain,
                                  double seed, const Tolerances& tol) {
  SignChangeResult res;
  BracketOutcome br = bracket_sign_change(f, domain, seed, tol);
  res.evaluations = br.evaluations;
  if (!br.found) {
    res.status = SignChangeStatus::NoBracket;
    res.probe_log = std::move(br.probes);
    return res;
  }

  double a = br.lo, b = br.hi;
  double fb = br.f_hi;
  res.initial_lo = a;
  res.initial_hi = b;

  for (int step = 0;
       step < tol.max_bisect_steps && (b - a) > tol.root_abs_tol; ++step) {
    double mid = a + 0.5 * (b - a);
    if (!(a < mid && mid < b)) break;  // bracket below double resolution
    double fm = f(mid);
    ++res.evaluations;

    if (std::fabs(fm) > tol.zero_tol) {
      if (fm > 0.0) a = mid;
      else {
        b = mid;
        fb = fm;
      }
      continue;
    }

    // Midpoint sits in the zero band. An exact zero flanked by strict signs
    // is the isolated-root case; certify it with probes a hair away.
    if (fm == 0.0) {
      double h = std::max(tol.root_abs_tol / 2.0,
                          4.0 * std::numeric_limits<double>::epsilon() *
                              std::fabs(mid));
      if (a < mid - h && mid + h < b) {
        double fl = f(mid - h);
        double fr = f(mid + h);
        res.evaluations += 2;
        if (fl > 0.0 && fr < 0.0) {
          res.status = SignChangeStatus::ExactZero;
          res.theta = mid;
          res.bracket_lo = mid - h;
          res.bracket_hi = mid + h;
          res.residual_at_theta = 0.0;
          return res;
        }
        if (fl < 0.0) {
          b = mid - h;
          fb = fl;
          continue;
        }
        if (fr > 0.0) {
          a = mid + h;
          continue;
        }
        bool moved = false;
        if (fl > 0.0) {
          a = mid - h;
          moved = true;
        }
        if (fr < 0.0) {
          b = mid + h;
          fb = fr;
          moved = true;
        }
        if (moved) continue;
      }
    }

    // Wide zero band: probe symmetrically. On a true sign gap the sum is
    // constant in t (every term is clipped or counting there), so the
    // certificate demands bitwise-equal values across the band. A shallow
    // smooth crossing also dips under zero_tol, but its values still vary
    // and their signs still localise the root, so anything non-constant
    // re-tightens the bracket instead.
    double delta = (b - a) / 4.0;
    if (2.0 * delta > tol.plateau_width_tol) {
      double pl = mid - delta;
      double pr = mid + delta;
      double fl = f(pl);
      double fr = f(pr);
      res.evaluations += 2;
      if (fl == fm && fr == fm) {
        res.status = SignChangeStatus::Plateau;
        res.plateau_lo = pl;
        res.plateau_hi = pr;
        return res;
      }
      bool tightened = false;
      if (fl < 0.0) {
        b = pl;
        fb = fl;
        tightened = true;
      } else if (fl > 0.0) {
        a = pl;
        tightened = true;
      }
      if (fr > 0.0) {
        a = pr;
        tightened = true;
      } else if (fr < 0.0 && pr < b) {
        b = pr;
        fb = fr;
        tightened = true;
      }
      if (tightened) continue;
      // Both probes exactly zero around a nonzero midpoint: fall through to
      // the raw-sign step below and shrink toward the flat spot.
    }

    // Band narrower than the plateau threshold: treat it as a crossing and
    // bisect on the raw sign.
    if (fm > 0.0) {
      a = mid;
    } else {
      b = mid;
      fb = fm;
    }
  }

  res.status = SignChangeStatus::Located;
  res.theta = b;
  res.bracket_lo = a;
  res.bracket_hi = b;
  res.residual_at_theta = fb;
  return res;
}

SignProfile sign_profile(const RealFn& f, std::span<const double> grid,
                         double zero_tol) {
  SignProfile p;
  std::vector<int> sign(grid.size(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = f(grid[i]);
    if (std::fabs(v) <= zero_tol) {
      p.zero.push_back(i);
    } else if (v > 0.0) {
      sign[i] = 1;
      p.positive.push_back(i);
    } else {
      sign[i] = -1;
      p.negative.push_back(i);
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < sign.size(); ++i) {
    if (sign[i] > sign[i - 1]) monotone = false;
  }
  bool any_signed = !p.positive.empty() || !p.negative.empty();
  p.decreasing_type = !grid.empty() && monotone && any_signed;
  return p;
}

}  // namespace psilab
