#include "pec/converse.hpp"

#include <cmath>

#include "pec/errors.hpp"

namespace pec {

bool ConverseReport::all_pass() const {
  for (const InequalityRecord& r : rows)
    if (!r.pass) return false;
  return true;
}

void ConverseReport::append(const ConverseReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  premises.insert(premises.end(), other.premises.begin(), other.premises.end());
  premises_met = premises_met && other.premises_met;
  if (!other.note.empty())
    note = note.empty() ? other.note : note + "; " + other.note;
}

InequalityRecord record_le(std::string name, double lhs, double rhs) {
  InequalityRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.pass = r.slack >= -kSlackTolerance;
  return r;
}

InequalityRecord record_ge(std::string name, double lhs, double rhs) {
  InequalityRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.pass = r.slack >= -kSlackTolerance;
  return r;
}

ConverseReport check_probability_bounds(const TildeEnsemble& ens) {
  ConverseReport rep;
  rep.rows.push_back({"cond_prob_bound_1", ens.dir1.worst_prob_lhs,
                      ens.dir1.worst_prob_rhs, ens.dir1.worst_prob_slack,
                      ens.dir1.worst_prob_slack >= -kSlackTolerance});
  rep.rows.push_back({"cond_prob_bound_2", ens.dir2.worst_prob_lhs,
                      ens.dir2.worst_prob_rhs, ens.dir2.worst_prob_slack,
                      ens.dir2.worst_prob_slack >= -kSlackTolerance});
  double joint_cap =
      std::exp2(-double(ens.n) * (ens.h_joint - ens.gamma)) / ens.q12;
  rep.rows.push_back(
      record_le("joint_prob_bound", ens.max_cipher_joint, joint_cap));
  return rep;
}

ConverseReport check_entropy_bounds(const SystemSpec& spec,
                                    const TildeEnsemble& ens) {
  ConverseReport rep;
  double log_q12 = std::log2(ens.q12);
  double n = double(ens.n);
  rep.rows.push_back(record_ge("cond_entropy_lower_1",
                               ens.dir1.h_cipher_given_other,
                               n * (ens.h_cond1 - ens.gamma) + log_q12));
  rep.rows.push_back(record_ge("cond_entropy_lower_2",
                               ens.dir2.h_cipher_given_other,
                               n * (ens.h_cond2 - ens.gamma) + log_q12));
  rep.rows.push_back(record_ge("joint_entropy_lower", ens.h_cipher_joint,
                               n * (ens.h_joint - ens.gamma) + log_q12));
  const JointPmf& keys = spec.keys();
  rep.rows.push_back(record_le("key_entropy_upper_1", ens.h_key_image1,
                               n * keys.entropy_marginal(1)));
  rep.rows.push_back(record_le("key_entropy_upper_2", ens.h_key_image2,
                               n * keys.entropy_marginal(2)));
  rep.rows.push_back(record_le("key_entropy_upper_joint", ens.h_key_image,
                               n * keys.entropy_joint()));
  rep.rows.push_back(record_ge("jensen_step_1", ens.dir1.lambda, log_q12));
  rep.rows.push_back(record_ge("jensen_step_2", ens.dir2.lambda, log_q12));
  return rep;
}

ConverseReport check_mi_conditioning(const SystemSpec& spec,
                                     const TildeEnsemble& ens, double delta) {
  ConverseReport rep;
  double mi_uncond = spec.leakage_exact();
  double i_cond = ens.conditional_mutual_information();
  rep.rows.push_back(
      record_ge("mi_conditioning_dpi", mi_uncond, ens.q12 * i_cond));
  InequalityRecord premise =
      record_le("premise.delta_covers_leakage", mi_uncond, delta);
  rep.premises.push_back(premise);
  if (premise.pass) {
    rep.rows.push_back(
        record_le("mi_conditioning_budget", i_cond, delta / ens.q12));
  } else {
    rep.premises_met = false;
    rep.note = "leakage exceeds the security budget delta";
  }
  return rep;
}

namespace {

struct Prepared {
  DecodableSet d;
  TypicalSets sets;
  double pe = 0.0;
  double mi = 0.0;
};

Prepared prepare(const SystemSpec& spec, double gamma) {
  Prepared p;
  p.d = spec.decodable_set();
  p.pe = spec.error_probability(p.d);
  p.mi = spec.leakage_exact();
  p.sets = build_typical(spec.source(), spec.n(), gamma, spec.budget());
  p.sets.intersect(p.d);
  return p;
}

void evaluate_propositions(const SystemSpec& spec, const TypicalParams& params,
                           const std::optional<RatePair>& rates,
                           const Prepared& prep, const TildeEnsemble* ens,
                           ConverseReport& rep) {
  const double n = double(spec.n());
  const double gamma = params.gamma;
  const double nu_bar = prep.sets.nu + params.epsilon;

  rep.premises.push_back(
      record_le("premise.error_within_epsilon", prep.pe, params.epsilon));
  rep.premises.push_back(
      record_le("premise.leakage_within_delta", prep.mi, params.delta));
  rep.premises.push_back(
      record_le("premise.delta_within_cap", params.delta, params.delta0));
  InequalityRecord eps_rec{"premise.epsilon_below_one", params.epsilon, 1.0,
                           1.0 - params.epsilon, params.epsilon < 1.0};
  rep.premises.push_back(eps_rec);
  InequalityRecord nu_rec{"premise.nu_bar_below_one", nu_bar, 1.0,
                          1.0 - nu_bar, nu_bar < 1.0};
  rep.premises.push_back(nu_rec);

  for (const InequalityRecord& r : rep.premises)
    if (!r.pass) rep.premises_met = false;
  if (!rep.premises_met) {
    rep.note = "reliability/security premises unmet; bounds not asserted";
    return;
  }

  double zeta = converse_slack_term(params, spec.n(), prep.sets.nu);
  const JointPmf& keys = spec.keys();
  double hk1 = keys.entropy_marginal(1);
  double hk2 = keys.entropy_marginal(2);
  double hk12 = keys.entropy_joint();
  double log_q12 = std::log2(ens->q12);

  // Exact event-mass accounting behind the slack term.
  rep.rows.push_back(
      record_le("typical_decodable_complement", 1.0 - ens->q12, nu_bar));
  rep.rows.push_back(record_ge("event_mass_lower", ens->q12, 1.0 - nu_bar));

  rep.rows.push_back(record_le("key_vs_cond_entropy_1", prep.sets.h_cond1,
                               hk1 + gamma + zeta));
  rep.rows.push_back(record_le("key_vs_cond_entropy_2", prep.sets.h_cond2,
                               hk2 + gamma + zeta));
  rep.rows.push_back(record_le("key_vs_joint_entropy", prep.sets.h_joint,
                               hk12 + gamma + zeta));

  double i_cond = ens->conditional_mutual_information();
  rep.rows.push_back(record_ge(
      "cond_mi_lower_1", i_cond,
      n * (prep.sets.h_cond1 - gamma) + log_q12 - n * hk1));
  rep.rows.push_back(record_ge(
      "cond_mi_lower_2", i_cond,
      n * (prep.sets.h_cond2 - gamma) + log_q12 - n * hk2));
  rep.rows.push_back(record_ge(
      "cond_mi_lower_joint", i_cond,
      n * (prep.sets.h_joint - gamma) + log_q12 - n * hk12));

  if (!rates) return;
  InequalityRecord on_line{"premise.sum_rate_on_boundary",
                           std::abs(rates->r1 + rates->r2 - prep.sets.h_joint),
                           1e-6, 0.0, false};
  on_line.slack = on_line.rhs - on_line.lhs;
  on_line.pass = on_line.slack >= 0.0;
  rep.premises.push_back(on_line);
  InequalityRecord rate1 =
      record_le("premise.rate_bound_1", spec.rate(1), rates->r1 + gamma);
  InequalityRecord rate2 =
      record_le("premise.rate_bound_2", spec.rate(2), rates->r2 + gamma);
  rep.premises.push_back(rate1);
  rep.premises.push_back(rate2);
  if (!on_line.pass || !rate1.pass || !rate2.pass) {
    rep.premises_met = false;
    rep.note = "sum-rate boundary premises unmet; rate bounds not asserted";
    return;
  }

  rep.rows.push_back(record_ge("cipher_entropy_lower_1", ens->h_cipher1,
                               n * (rates->r1 - 2 * gamma) + log_q12));
  rep.rows.push_back(record_ge("cipher_entropy_lower_2", ens->h_cipher2,
                               n * (rates->r2 - 2 * gamma) + log_q12));
  rep.rows.push_back(
      record_le("sum_rate_key_bound_1", rates->r1, hk1 + 2 * gamma + zeta));
  rep.rows.push_back(
      record_le("sum_rate_key_bound_2", rates->r2, hk2 + 2 * gamma + zeta));
  rep.rows.push_back(record_ge(
      "key_rate_chain_1", params.delta / ens->q12,
      n * (rates->r1 - 2 * gamma) + log_q12 - n * hk1));
  rep.rows.push_back(record_ge(
      "key_rate_chain_2", params.delta / ens->q12,
      n * (rates->r2 - 2 * gamma) + log_q12 - n * hk2));
}

}  // namespace

ConverseReport check_propositions(const SystemSpec& spec,
                                  const TypicalParams& params,
                                  const std::optional<RatePair>& rates) {
  if (!(params.gamma > 0.0)) throw validation_error("gamma must be positive");
  Prepared prep = prepare(spec, params.gamma);
  ConverseReport rep;
  double nu_bar = prep.sets.nu + params.epsilon;
  std::optional<TildeEnsemble> ens;
  if (nu_bar < 1.0 && params.epsilon < 1.0)
    ens.emplace(build_tilde(spec, prep.sets));
  evaluate_propositions(spec, params, rates, prep, ens ? &*ens : nullptr, rep);
  return rep;
}

ConverseReport converse_certify(const SystemSpec& spec, double gamma,
                                std::optional<double> epsilon,
                                std::optional<double> delta, double delta0,
                                const std::optional<RatePair>& rates) {
  if (!(gamma > 0.0)) throw validation_error("gamma must be positive");
  Prepared prep = prepare(spec, gamma);
  TypicalParams params;
  params.gamma = gamma;
  params.epsilon = epsilon.value_or(prep.pe);
  params.delta = delta.value_or(prep.mi);
  params.delta0 = delta0;

  ConverseReport rep;
  double nu_bar = prep.sets.nu + params.epsilon;
  if (nu_bar >= 1.0 || prep.sets.d_tilde.empty()) {
    evaluate_propositions(spec, params, rates, prep, nullptr, rep);
    return rep;
  }
  TildeEnsemble ens = build_tilde(spec, prep.sets);
  rep.append(check_probability_bounds(ens));
  rep.append(check_entropy_bounds(spec, ens));
  rep.append(check_mi_conditioning(spec, ens, params.delta));
  double deviation = tilde_identity_deviation(spec, ens);
  rep.rows.push_back(
      record_le("conditional_identity_deviation", deviation, 1e-12));
  evaluate_propositions(spec, params, rates, prep, &ens, rep);
  return rep;
}

}  // namespace pec
