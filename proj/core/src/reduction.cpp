#include "npal/reduction.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace npal {

namespace {

mpz_class pow10z(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

mpz_class ceil_upper(const RealBall& x) {
  mpfr_t hi;
  mpfr_init2(hi, x.precision());
  x.upper(hi);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), hi, MPFR_RNDU);
  mpfr_clear(hi);
  return r;
}

}  // namespace

ContinuedFractionResult continued_fraction(const RealBall& x, int count) {
  ContinuedFractionResult out;
  out.exhausted = false;
  mpfr_prec_t p = x.precision();
  RealBall one = RealBall::from_long(1, p);
  RealBall cur = x;
  mpz_class pk_2 = 0, pk_1 = 1, qk_2 = 1, qk_1 = 0;  // p_{-2}.. standard seeds
  for (int k = 0; k < count; ++k) {
    auto fl = cur.certified_floor();
    if (!fl) {
      out.exhausted = true;
      break;
    }
    mpz_class a = *fl;
    mpz_class pk = a * pk_1 + pk_2;
    mpz_class qk = a * qk_1 + qk_2;

    // Approximation law |x - p/q| < 1/q^2, certified on the original ball.
    RealBall gap = (x - RealBall::from_mpq(mpq_class(pk, qk), p)).abs();
    if (!(gap * RealBall::from_mpz(qk * qk, p)).certainly_less(one)) {
      out.exhausted = true;
      break;
    }

    out.partial_quotients.push_back(a);
    out.convergents.push_back(Convergent{k, pk, qk});
    pk_2 = pk_1;
    pk_1 = pk;
    qk_2 = qk_1;
    qk_1 = qk;

    RealBall frac = cur - RealBall::from_mpz(a, p);
    if (frac.contains_zero()) {
      // Residual enclosure touches zero: either x is rational and the
      // expansion terminated, or precision ran out; stop either way.
      out.exhausted = !frac.is_exact();
      break;
    }
    cur = one / frac;
  }
  return out;
}

ReductionWitness find_reduction_convergent(const RealBall& theta,
                                           const mpz_class& M,
                                           const std::vector<RealBall>& family,
                                           int max_convergents) {
  if (M <= 0) throw DomainError("M must be positive");
  if (family.empty()) throw DomainError("empty reduction family");
  mpfr_prec_t p = theta.precision();
  ContinuedFractionResult cf = continued_fraction(theta, 400);
  mpz_class six_m = 6 * M;
  size_t i0 = 0;
  while (i0 < cf.convergents.size() && cf.convergents[i0].q <= six_m) ++i0;
  if (i0 == cf.convergents.size())
    throw ReductionError("precision exhausted before any convergent with q > 6M");

  RealBall Mb = RealBall::from_mpz(M, p);
  size_t end = std::min(cf.convergents.size(), i0 + static_cast<size_t>(max_convergents));
  for (size_t i = i0; i < end; ++i) {
    const Convergent& cv = cf.convergents[i];
    RealBall qb = RealBall::from_mpz(cv.q, p);
    RealBall mtq = (theta * qb).nearest_int_distance() * Mb;
    bool all_positive = true;
    const RealBall* min_xi = nullptr;
    std::vector<RealBall> xis;
    xis.reserve(family.size());
    for (const RealBall& mu : family) {
      xis.push_back((mu * qb).nearest_int_distance() - mtq);
      if (!xis.back().certainly_positive()) {
        all_positive = false;
        break;
      }
    }
    if (!all_positive) continue;
    for (const RealBall& xi : xis)
      if (min_xi == nullptr || mpfr_cmp(xi.mid(), min_xi->mid()) < 0) min_xi = &xi;
    return ReductionWitness{cv, *min_xi};
  }
  throw ReductionError("reduction failed: no convergent certifies the family");
}

mpz_class kappa_bound(const RealBall& A, const mpz_class& q, const RealBall& xi,
                      const RealBall& logB) {
  if (!xi.certainly_positive()) throw DomainError("xi must be certified positive");
  if (!logB.certainly_positive()) throw DomainError("log B must be positive");
  mpfr_prec_t p = std::max(A.precision(), xi.precision());
  RealBall ratio = A * RealBall::from_mpz(q, p) / xi;
  // Only the upper endpoint matters; one directed log suffices.
  mpfr_t hi, lb_lo;
  mpfr_init2(hi, p);
  mpfr_init2(lb_lo, p);
  ratio.upper(hi);
  mpfr_log(hi, hi, MPFR_RNDU);
  logB.lower(lb_lo);
  mpfr_div(hi, hi, lb_lo, MPFR_RNDU);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), hi, MPFR_RNDU);  // ceil of the upper endpoint
  mpfr_clears(hi, lb_lo, static_cast<mpfr_ptr>(nullptr));
  return r - 1;
}

namespace {

// Shared per-stage context: admissible convergents of theta and the
// precomputed M ||theta q|| enclosures.
struct StageContext {
  mpfr_prec_t prec;
  std::vector<Convergent> convergents;  // q > 6M, in increasing order
  std::vector<RealBall> q_balls;
  std::vector<RealBall> m_theta_q;
  RealBall ln_9a1;
  RealBall inv_log_alpha1;
  RealBall A;
  RealBall logB;
};

StageContext make_context(const AlgebraicConstants& c, const mpz_class& M,
                          const RealBall& A, const RealBall& logB) {
  if (M <= 0) throw DomainError("M must be positive");
  mpfr_prec_t p = c.alpha1.precision();
  RealBall theta = c.log10 / c.log_alpha1;
  ContinuedFractionResult cf = continued_fraction(theta, 400);
  mpz_class six_m = 6 * M;
  StageContext ctx{p, {}, {}, {}, RealBall(p), RealBall(p), A, logB};
  RealBall Mb = RealBall::from_mpz(M, p);
  for (const Convergent& cv : cf.convergents) {
    if (cv.q <= six_m) continue;
    if (ctx.convergents.size() >= 32) break;
    RealBall qb = RealBall::from_mpz(cv.q, p);
    ctx.m_theta_q.push_back((theta * qb).nearest_int_distance() * Mb);
    ctx.q_balls.push_back(std::move(qb));
    ctx.convergents.push_back(cv);
  }
  if (ctx.convergents.empty())
    throw ReductionError("precision exhausted before any convergent with q > 6M");
  RealBall nine_a1 = RealBall::from_long(9, p) * c.a1;
  ctx.ln_9a1 = nine_a1.log();
  ctx.inv_log_alpha1 = RealBall::from_long(1, p) / c.log_alpha1;
  return ctx;
}

// One instance outcome flags.
enum class InstanceStatus { certified, negative_everywhere, undecided };

struct InstanceResult {
  InstanceStatus status;
  size_t conv_pos;  // position in ctx.convergents
  RealBall xi;
  mpz_class bound;
};

// Walks the admissible convergents until this instance's xi certifies.
InstanceResult run_instance(const StageContext& ctx, const mpz_class& W) {
  RealBall mu = (RealBall::from_mpz(W, ctx.prec).log() - ctx.ln_9a1) *
                ctx.inv_log_alpha1;
  bool saw_undecided = false;
  for (size_t i = 0; i < ctx.convergents.size(); ++i) {
    RealBall xi = (mu * ctx.q_balls[i]).nearest_int_distance() - ctx.m_theta_q[i];
    if (xi.certainly_positive()) {
      mpz_class b = kappa_bound(ctx.A, ctx.convergents[i].q, xi, ctx.logB);
      return InstanceResult{InstanceStatus::certified, i, std::move(xi),
                            std::move(b)};
    }
    if (!xi.certainly_negative()) saw_undecided = true;
  }
  return InstanceResult{saw_undecided ? InstanceStatus::undecided
                                      : InstanceStatus::negative_everywhere,
                        0, RealBall(ctx.prec), mpz_class(0)};
}

// Thread-local aggregation, merged commutatively across chunks.
struct Accumulator {
  bool have = false;
  mpz_class worst_bound;
  unsigned long worst_instance_rank = 0;
  size_t worst_conv_pos = 0;
  RealBall worst_xi;
  RealBall xi_min;
  std::map<size_t, unsigned long> uses;
  bool undecided_seen = false;
  bool negative_seen = false;

  void absorb(unsigned long rank, const InstanceResult& r) {
    if (r.status == InstanceStatus::undecided) {
      undecided_seen = true;
      return;
    }
    if (r.status == InstanceStatus::negative_everywhere) {
      negative_seen = true;
      return;
    }
    ++uses[r.conv_pos];
    bool better = !have || r.bound > worst_bound ||
                  (r.bound == worst_bound && rank < worst_instance_rank);
    if (better) {
      worst_bound = r.bound;
      worst_instance_rank = rank;
      worst_conv_pos = r.conv_pos;
      worst_xi = r.xi;
    }
    if (!have || mpfr_cmp(r.xi.mid(), xi_min.mid()) < 0) xi_min = r.xi;
    have = true;
  }

  void merge(const Accumulator& o) {
    undecided_seen = undecided_seen || o.undecided_seen;
    negative_seen = negative_seen || o.negative_seen;
    for (const auto& [pos, cnt] : o.uses) uses[pos] += cnt;
    if (!o.have) return;
    bool better = !have || o.worst_bound > worst_bound ||
                  (o.worst_bound == worst_bound &&
                   o.worst_instance_rank < worst_instance_rank);
    if (better) {
      worst_bound = o.worst_bound;
      worst_instance_rank = o.worst_instance_rank;
      worst_conv_pos = o.worst_conv_pos;
      worst_xi = o.worst_xi;
    }
    if (!have || mpfr_cmp(o.xi_min.mid(), xi_min.mid()) < 0) xi_min = o.xi_min;
    have = true;
  }
};

// Runs a family of instances given by exact integers W (mu = log(W / (9 a1))
// / log alpha1) across threads; throws PrecisionError when any instance ends
// undecided (callers retry at doubled precision) and ReductionError when an
// instance fails on every admissible convergent outright.
StageOutcome run_family(const StageContext& ctx, const std::string& stage_name,
                        const std::vector<mpz_class>& ws, int threads) {
  unsigned long total = ws.size();
  if (threads < 1) threads = 1;
  threads = static_cast<int>(
      std::min<unsigned long>(static_cast<unsigned long>(threads), total));

  std::vector<Accumulator> acc(threads);
  auto work = [&](int t) {
    for (unsigned long i = static_cast<unsigned long>(t); i < total;
         i += static_cast<unsigned long>(threads))
      acc[t].absorb(i, run_instance(ctx, ws[i]));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  Accumulator merged;
  for (const Accumulator& a : acc) merged.merge(a);
  if (merged.negative_seen)
    throw ReductionError("reduction failed: an instance fails on every admissible convergent");
  if (merged.undecided_seen)
    throw PrecisionError("undecided xi comparison in " + stage_name);
  if (!merged.have) throw ReductionError("empty reduction family");

  StageOutcome out;
  out.stage = stage_name;
  out.bound = merged.worst_bound;
  out.xi_min = merged.xi_min;
  out.worst_convergent = ctx.convergents[merged.worst_conv_pos];
  out.worst_xi = merged.worst_xi;
  out.instance_count = total;
  for (const auto& [pos, cnt] : merged.uses)
    out.convergents_used.push_back(
        ConvergentUse{ctx.convergents[pos].index, ctx.convergents[pos].q, cnt});
  return out;
}

AlgebraicConstants doubled(const AlgebraicConstants& c) {
  return make_constants(c.precision_digits * 2);
}

}  // namespace

StageOutcome reduce_stage1(const AlgebraicConstants& c, const mpz_class& M,
                           int threads) {
  (void)threads;  // nine instances; the shared witness is immediate
  mpfr_prec_t p = c.alpha1.precision();
  RealBall theta = c.log10 / c.log_alpha1;
  RealBall nine_a1 = RealBall::from_long(9, p) * c.a1;
  RealBall ln_9a1 = nine_a1.log();
  RealBall inv = RealBall::from_long(1, p) / c.log_alpha1;
  std::vector<RealBall> family;
  for (int f1 = 1; f1 <= 9; ++f1)
    family.push_back((RealBall::from_long(f1, p).log() - ln_9a1) * inv);

  ReductionWitness w = find_reduction_convergent(theta, M, family);
  RealBall A = RealBall::from_long(54, p) / c.log_alpha1;
  mpz_class bound = kappa_bound(A, w.convergent.q, w.xi_min, c.log10);

  StageOutcome out;
  out.stage = "stage1";
  out.bound = bound;
  out.xi_min = w.xi_min;
  out.worst_convergent = w.convergent;
  out.worst_xi = w.xi_min;
  out.instance_count = family.size();
  out.convergents_used.push_back(
      ConvergentUse{w.convergent.index, w.convergent.q,
                    static_cast<unsigned long>(family.size())});
  out.side_conditions = {
      "q > 6M certified for the selected convergent",
      "family-minimum xi = ||mu q|| - M ||theta q|| certified positive",
      "convergent satisfies |theta - p/q| < 1/q^2 (certified)",
      "linear-form estimate |Gamma| < 54 * 10^{-u1} valid for u1 >= 2; the "
      "excluded range lies far above",
  };
  return out;
}

namespace {

StageOutcome reduce_stage2_impl(const AlgebraicConstants& c, const mpz_class& M,
                                unsigned long u1_max, int threads, int retries) {
  mpfr_prec_t p = c.alpha1.precision();
  RealBall A = RealBall::from_long(54, p) / c.log_alpha1;
  StageContext ctx = make_context(c, M, A, c.log10);
  std::vector<mpz_class> ws;
  ws.reserve(81 * u1_max);
  for (int f1 = 1; f1 <= 9; ++f1)
    for (int f2 = 0; f2 <= 9; ++f2) {
      if (f2 == f1) continue;
      for (unsigned long u1 = 1; u1 <= u1_max; ++u1)
        ws.push_back(f1 * pow10z(u1) - (f1 - f2));
    }
  try {
    return run_family(ctx, "stage2", ws, threads);
  } catch (const PrecisionError&) {
    if (retries <= 0) throw;
    return reduce_stage2_impl(doubled(c), M, u1_max, threads, retries - 1);
  }
}

StageOutcome reduce_stage3_impl(const AlgebraicConstants& c, const mpz_class& M,
                                unsigned long u1_max, unsigned long u2_max,
                                int threads, int retries) {
  mpfr_prec_t p = c.alpha1.precision();
  // |Gamma| < (4 / a1) alpha1^{-n}: A = 4 / (a1 log alpha1), B = alpha1.
  RealBall A = RealBall::from_long(4, p) / (c.a1 * c.log_alpha1);
  StageContext ctx = make_context(c, M, A, c.log_alpha1);
  std::vector<mpz_class> ws;
  ws.reserve(81 * u1_max * u2_max);
  for (int f1 = 1; f1 <= 9; ++f1)
    for (int f2 = 0; f2 <= 9; ++f2) {
      if (f2 == f1) continue;
      long d = f1 - f2;
      for (unsigned long u1 = 1; u1 <= u1_max; ++u1)
        for (unsigned long u2 = 1; u2 <= u2_max; ++u2) {
          mpz_class w = f1 * pow10z(u1 + u2) - d * pow10z(u2) + d;
          ws.push_back(std::move(w));
        }
    }
  try {
    return run_family(ctx, "stage3", ws, threads);
  } catch (const PrecisionError&) {
    if (retries <= 0) throw;
    return reduce_stage3_impl(doubled(c), M, u1_max, u2_max, threads,
                              retries - 1);
  }
}

}  // namespace

StageOutcome reduce_stage2(const AlgebraicConstants& c, const mpz_class& M,
                           unsigned long u1_max, int threads) {
  if (u1_max < 1) throw DomainError("u1_max must be >= 1");
  StageOutcome out = reduce_stage2_impl(c, M, u1_max, threads, 2);
  out.side_conditions = {
      "q > 6M certified for every used convergent",
      "per-instance xi certified positive; stage bound is the family maximum",
      "convergents satisfy |theta - p/q| < 1/q^2 (certified)",
      "instance integers f1 * 10^{u1} - (f1 - f2) are positive",
      "linear-form estimate |Gamma| < 54 * 10^{-u2} valid for u2 >= 2; the "
      "excluded range lies far above",
  };
  return out;
}

StageOutcome reduce_stage3(const AlgebraicConstants& c, const mpz_class& M,
                           unsigned long u1_max, unsigned long u2_max,
                           int threads) {
  if (u1_max < 1 || u2_max < 1) throw DomainError("block bounds must be >= 1");
  StageOutcome out = reduce_stage3_impl(c, M, u1_max, u2_max, threads, 2);
  out.side_conditions = {
      "q > 6M certified for every used convergent",
      "per-instance xi certified positive; stage bound is the family maximum",
      "convergents satisfy |theta - p/q| < 1/q^2 (certified)",
      "instance integers f1 * 10^{u1+u2} - (f1-f2) * 10^{u2} + (f1-f2) are positive",
      "linear-form estimate |Gamma| < (4/a1) alpha1^{-n} valid for n >= 6; the "
      "excluded range lies far above",
  };
  return out;
}

}  // namespace npal
