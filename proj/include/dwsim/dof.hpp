#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dwsim {

// Whether the relays/destination know the eavesdropper's fading coefficients.
enum class CsiMode { Full, NoEve };

inline std::string_view csi_name(CsiMode m) { return m == CsiMode::Full ? "full" : "no_eve"; }

inline CsiMode csi_from_name(std::string_view name) {
  if (name == "full") return CsiMode::Full;
  if (name == "no_eve") return CsiMode::NoEve;
  throw std::invalid_argument("unknown csi mode: " + std::string(name) +
                              " (expected full or no_eve)");
}

// Link strengths normalized to secure-d.o.f. scale. Formulas assume
// alpha1 >= alpha2; callers with the opposite order are normalized by a swap.
struct DofPoint {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  bool swapped = false;
};

inline DofPoint normalize_alphas(double alpha1, double alpha2) {
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
    throw std::invalid_argument("link d.o.f. must be nonnegative");
  if (alpha1 >= alpha2) return {alpha1, alpha2, false};
  return {alpha2, alpha1, true};
}

// Secure d.o.f. with full eavesdropper CSI at the relays.
inline double ds_full(double alpha1, double alpha2) {
  DofPoint p = normalize_alphas(alpha1, alpha2);
  return std::min({p.alpha1 + p.alpha2, (p.alpha2 + 1.0) / 2.0, 1.0});
}

// Secure d.o.f. when the relays/destination never learn the eavesdropper's
// coefficients.
inline double ds_nocsi(double alpha1, double alpha2) {
  DofPoint p = normalize_alphas(alpha1, alpha2);
  return std::min({p.alpha1 + p.alpha2, (p.alpha1 + p.alpha2 + 1.0) / 3.0,
                   (p.alpha2 + 1.0) / 2.0, 1.0});
}

struct DsBounds {
  double lower = 0.0;
  double upper = 0.0;
};

namespace detail {
inline void require_multi(int relays, double alpha, const char* who) {
  if (relays < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 relays");
  if (!(alpha >= 0.0)) throw std::invalid_argument(std::string(who) + ": alpha must be >= 0");
}
}  // namespace detail

// Symmetric M-relay bounds with full CSI. The gap between the bounds is open
// for M > 2; at M = 2 they coincide with the two-relay formula.
inline DsBounds ds_multi_bounds(int relays, double alpha) {
  detail::require_multi(relays, alpha, "ds_multi_bounds");
  const double m = double(relays);
  const double upper = std::min({m * alpha, (m - 1.0) / m * (1.0 + alpha), 1.0});
  const double lower =
      std::min({m * alpha, (2.0 * m * (m - 1.0) + m * m * alpha) / (2.0 * m * m - m + 2.0), 1.0});
  return {lower, upper};
}

// Symmetric M-relay secure d.o.f. without eavesdropper CSI (tight).
inline double ds_multi_nocsi(int relays, double alpha) {
  detail::require_multi(relays, alpha, "ds_multi_nocsi");
  const double m = double(relays);
  return std::min({m * alpha, (m * alpha + m - 1.0) / (m + 1.0), 1.0});
}

// One constituent of a time-sharing schedule: `scheme` runs for a fraction
// `lambda` of the block, delivering `ds_rate` secure d.o.f. per unit time and
// consuming `usage[k]` of link k's d.o.f. budget in total (already scaled by
// lambda).
struct PlanEntry {
  std::string scheme;
  double lambda = 0.0;
  double ds_rate = 0.0;
  std::vector<double> usage;

  double ds_contribution() const { return lambda * ds_rate; }
};

struct TimeSharePlan {
  std::vector<PlanEntry> entries;
  double achieved_ds = 0.0;
  bool swapped = false;  // physical link order was exchanged to normalize
  int relays = 2;

  double total_fraction() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.lambda;
    return s;
  }

  std::vector<double> total_usage() const {
    std::vector<double> u(std::size_t(relays), 0.0);
    for (const auto& e : entries)
      for (int k = 0; k < relays; ++k) u[std::size_t(k)] += e.usage[std::size_t(k)];
    return u;
  }
};

namespace detail {

// usage_rates are per unit time; entries with nonpositive fractions are
// dropped (they appear at regime boundaries where a constituent vanishes).
inline void push_entry(TimeSharePlan& plan, std::string scheme, double lambda, double ds_rate,
                       std::vector<double> usage_rates) {
  if (!(lambda > 1e-15)) return;
  PlanEntry e;
  e.scheme = std::move(scheme);
  e.lambda = lambda;
  e.ds_rate = ds_rate;
  e.usage.resize(usage_rates.size());
  for (std::size_t k = 0; k < usage_rates.size(); ++k) e.usage[k] = lambda * usage_rates[k];
  plan.entries.push_back(std::move(e));
}

inline void finish_plan(TimeSharePlan& plan) {
  const double used = plan.total_fraction();
  if (used < 1.0 - 1e-15)
    push_entry(plan, "silence", 1.0 - used, 0.0,
               std::vector<double>(std::size_t(plan.relays), 0.0));
  plan.achieved_ds = 0.0;
  for (const auto& e : plan.entries) plan.achieved_ds += e.ds_contribution();
}

inline std::size_t argmin_index(std::span<const double> terms) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < terms.size(); ++i)
    if (terms[i] < terms[best]) best = i;
  return best;
}

}  // namespace detail

// Reconstructs the achievability schedule behind ds_full / ds_nocsi: which
// scheme runs for which fraction of the time, with per-link budget
// accounting. Per unit time the constituents cost
//   cj          (1/3, 1/3)  at 2/3 d.o.f.   (jamming is relay-local)
//   bcj         (1/2, 0)    at 1/2          (message on link 1 only)
//   sab         (1, 1)      at 1            (messages + shared dither)
//   coj         (1, 1)      at 1            (sum stream + dither stream)
inline TimeSharePlan plan_timeshare(double alpha1, double alpha2, CsiMode csi) {
  const DofPoint p = normalize_alphas(alpha1, alpha2);
  const double a1 = p.alpha1, a2 = p.alpha2;

  TimeSharePlan plan;
  plan.swapped = p.swapped;
  plan.relays = 2;

  // in the normalized frame; swapped back below
  const std::vector<double> use_cj = {1.0 / 3.0, 1.0 / 3.0};
  const std::vector<double> use_bcj1 = {0.5, 0.0};
  const std::vector<double> use_bcj2 = {0.0, 0.5};
  const std::vector<double> use_both = {1.0, 1.0};

  if (csi == CsiMode::Full) {
    const double terms[] = {a1 + a2, (a2 + 1.0) / 2.0, 1.0};
    switch (detail::argmin_index(terms)) {
      case 0:
        // link-limited: jam cooperatively as long as the thin link lasts,
        // then run the blind scheme on the surplus of the thick link
        detail::push_entry(plan, "cj", 3.0 * a2, 2.0 / 3.0, use_cj);
        detail::push_entry(plan, "bcj", 2.0 * (a1 - a2), 0.5, use_bcj1);
        break;
      case 1:
        if (a2 <= 1.0 / 3.0) {
          detail::push_entry(plan, "cj", 3.0 * a2, 2.0 / 3.0, use_cj);
          detail::push_entry(plan, "bcj", 1.0 - 3.0 * a2, 0.5, use_bcj1);
        } else {
          detail::push_entry(plan, "cj", 1.5 * (1.0 - a2), 2.0 / 3.0, use_cj);
          detail::push_entry(plan, "sab", (3.0 * a2 - 1.0) / 2.0, 1.0, use_both);
        }
        break;
      default:
        detail::push_entry(plan, "sab", 1.0, 1.0, use_both);
        break;
    }
  } else {
    const double terms[] = {a1 + a2, (a1 + a2 + 1.0) / 3.0, (a2 + 1.0) / 2.0, 1.0};
    switch (detail::argmin_index(terms)) {
      case 0:
        detail::push_entry(plan, "bcj", 2.0 * a1, 0.5, use_bcj1);
        detail::push_entry(plan, "bcj_swapped", 2.0 * a2, 0.5, use_bcj2);
        break;
      case 1:
        detail::push_entry(plan, "bcj", 2.0 * (a1 - 2.0 * a2 + 1.0) / 3.0, 0.5, use_bcj1);
        detail::push_entry(plan, "bcj_swapped", 2.0 * (a2 - 2.0 * a1 + 1.0) / 3.0, 0.5, use_bcj2);
        detail::push_entry(plan, "coj", (2.0 * (a1 + a2) - 1.0) / 3.0, 1.0, use_both);
        break;
      case 2:
        detail::push_entry(plan, "bcj", 1.0 - a2, 0.5, use_bcj1);
        detail::push_entry(plan, "coj", a2, 1.0, use_both);
        break;
      default:
        detail::push_entry(plan, "coj", 1.0, 1.0, use_both);
        break;
    }
  }

  detail::finish_plan(plan);

  if (plan.swapped) {
    for (auto& e : plan.entries) {
      std::swap(e.usage[0], e.usage[1]);
      if (e.scheme == "bcj")
        e.scheme = "bcj_swapped";
      else if (e.scheme == "bcj_swapped")
        e.scheme = "bcj";
    }
  }
  return plan;
}

// Symmetric M-relay schedule over the pairwise sub-schemes. Labels carry
// 1-based relay indices ("sab_1_2", "coj_2_3", "bcj_1"); "cj_all" is the
// all-relay cooperative-jamming constituent whose per-link cost equals its
// per-message d.o.f.
inline TimeSharePlan plan_timeshare_multi(int relays, double alpha, CsiMode csi) {
  detail::require_multi(relays, alpha, "plan_timeshare_multi");
  const double m = double(relays);
  const int pair_count = relays * (relays - 1) / 2;

  TimeSharePlan plan;
  plan.relays = relays;
  auto unit = [&](double value) { return std::vector<double>(std::size_t(relays), value); };
  auto pair_usage = [&](int i, int j, double vi) {
    std::vector<double> u(std::size_t(relays), 0.0);
    u[std::size_t(i)] = u[std::size_t(j)] = vi;
    return u;
  };
  auto one_usage = [&](int k, double vk) {
    std::vector<double> u(std::size_t(relays), 0.0);
    u[std::size_t(k)] = vk;
    return u;
  };
  auto label = [](const char* base, int i, int j = -1) {
    std::string s = base;
    s += '_';
    s += std::to_string(i + 1);
    if (j >= 0) {
      s += '_';
      s += std::to_string(j + 1);
    }
    return s;
  };

  // uniform mixtures used by the corner points
  auto push_uniform_sab = [&](double total) {
    // each pair scheme sends one message per relay (1/M d.o.f. each, d.o.f. 1
    // total) plus the shared dither on the active pair's links
    for (int i = 0; i < relays; ++i)
      for (int j = i + 1; j < relays; ++j) {
        auto u = unit(1.0 / m);
        u[std::size_t(i)] += 1.0 / m;
        u[std::size_t(j)] += 1.0 / m;
        detail::push_entry(plan, label("sab", i, j), total / double(pair_count), 1.0,
                           std::move(u));
      }
  };
  auto push_uniform_coj = [&](double total) {
    for (int i = 0; i < relays; ++i)
      for (int j = i + 1; j < relays; ++j)
        detail::push_entry(plan, label("coj", i, j), total / double(pair_count), 1.0,
                           pair_usage(i, j, 1.0));
  };
  auto push_uniform_bcj = [&](double total) {
    // message on link k at (M-1)/M d.o.f.; jamming is relay-local
    for (int k = 0; k < relays; ++k)
      detail::push_entry(plan, label("bcj", k), total / m, (m - 1.0) / m,
                         one_usage(k, (m - 1.0) / m));
  };

  if (csi == CsiMode::Full) {
    const double corner1 = (m - 1.0) / (m * (m - 1.0) + 1.0);  // all-relay jamming
    const double corner2 = (m + 2.0) / (m * m);                // uniform pair mixture
    if (alpha <= corner1) {
      detail::push_entry(plan, "cj_all", alpha / corner1, m * corner1, unit(corner1));
    } else if (alpha < corner2) {
      const double beta = (corner2 - alpha) / (corner2 - corner1);
      detail::push_entry(plan, "cj_all", beta, m * corner1, unit(corner1));
      push_uniform_sab(1.0 - beta);
    } else {
      push_uniform_sab(1.0);
    }
  } else {
    const double corner1 = (m - 1.0) / (m * m);
    const double corner2 = 2.0 / m;
    if (alpha <= corner1) {
      push_uniform_bcj(alpha * m * m / (m - 1.0));
    } else if (alpha < corner2) {
      const double beta = m * (2.0 - m * alpha) / (m + 1.0);
      push_uniform_bcj(beta);
      push_uniform_coj(1.0 - beta);
    } else {
      push_uniform_coj(1.0);
    }
  }

  detail::finish_plan(plan);
  return plan;
}

// Symmetric-alpha sweep of the d.o.f. formulas; lower == upper everywhere
// except the M > 2 full-CSI case, where the known bounds leave a gap.
struct SweepRow {
  double alpha = 0.0;
  double ds_lower = 0.0;
  double ds_upper = 0.0;
};

inline std::vector<SweepRow> region_sweep(std::span<const double> alphas, CsiMode csi,
                                          int relays = 2) {
  if (alphas.empty()) throw std::invalid_argument("region_sweep: empty alpha grid");
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (double a : alphas) {
    SweepRow r;
    r.alpha = a;
    if (relays == 2) {
      r.ds_lower = r.ds_upper = (csi == CsiMode::Full) ? ds_full(a, a) : ds_nocsi(a, a);
    } else if (csi == CsiMode::Full) {
      const DsBounds b = ds_multi_bounds(relays, a);
      r.ds_lower = b.lower;
      r.ds_upper = b.upper;
    } else {
      r.ds_lower = r.ds_upper = ds_multi_nocsi(relays, a);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace dwsim
