//! Incentive-constraint verifiers for correlated and communication equilibria.

use serde::{Deserialize, Serialize};

use super::{BayesianGame, Game, GameError, ProfileDistribution, TypeConditionalPolicy};
use crate::num::FixedReal;

/// One violated incentive constraint.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub player: usize,
    pub description: String,
    /// How much the deviation gains over obedience (positive = profitable).
    pub gain: FixedReal,
}

/// Outcome of a verifier run. `worst` carries the largest gain that was
/// observed, violating or not, so passing reports still show the slack.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub tolerance: FixedReal,
    pub constraints_checked: u64,
    pub violations: Vec<Violation>,
    pub worst: Option<Violation>,
}

impl VerificationReport {
    fn from_candidates(
        tolerance: FixedReal,
        constraints_checked: u64,
        candidates: Vec<Violation>,
    ) -> Self {
        let worst = candidates
            .iter()
            .max_by(|a, b| a.gain.cmp(&b.gain))
            .cloned();
        let violations: Vec<Violation> =
            candidates.into_iter().filter(|v| v.gain > tolerance).collect();
        VerificationReport {
            pass: violations.is_empty(),
            tolerance,
            constraints_checked,
            violations,
            worst,
        }
    }
}

/// Expected payoff vector under a profile distribution.
pub fn expected_payoffs(game: &Game, dist: &ProfileDistribution) -> Result<Vec<FixedReal>, GameError> {
    dist.validate(game)?;
    let p = game.precision();
    let mut out = vec![FixedReal::zero(p); game.players()];
    for (profile, prob) in dist.support.iter().zip(&dist.probs) {
        let rank = game.profile_rank(profile);
        for (i, acc) in out.iter_mut().enumerate() {
            *acc = &*acc + &(prob * game.payoff_at_rank(i, rank));
        }
    }
    Ok(out)
}

/// Check the correlated-equilibrium inequalities: for every player and every
/// pair of actions, obeying the recommendation must beat switching, up to
/// `tolerance`.
pub fn verify_correlated_equilibrium(
    game: &Game,
    dist: &ProfileDistribution,
    tolerance: &FixedReal,
) -> Result<VerificationReport, GameError> {
    dist.validate(game)?;
    let p = game.precision();
    let mut candidates = Vec::new();
    let mut checked = 0u64;
    for i in 0..game.players() {
        let k = game.action_count(i);
        for rec in 0..k {
            for alt in 0..k {
                if alt == rec {
                    continue;
                }
                checked += 1;
                let mut gain = FixedReal::zero(p);
                for (profile, prob) in dist.support.iter().zip(&dist.probs) {
                    if profile[i] != rec {
                        continue;
                    }
                    let mut switched = profile.clone();
                    switched[i] = alt;
                    let delta = game.payoff(i, &switched) - game.payoff(i, profile);
                    gain = &gain + &(prob * &delta);
                }
                candidates.push(Violation {
                    player: i,
                    description: format!(
                        "recommended {} switching to {}",
                        game.actions()[i][rec],
                        game.actions()[i][alt]
                    ),
                    gain,
                });
            }
        }
    }
    Ok(VerificationReport::from_candidates(tolerance.clone(), checked, candidates))
}

/// Check the communication-equilibrium inequalities in revelation form: no
/// player may profit from misreporting their type and then applying any
/// deviation map to the received recommendation.
///
/// For each `(player i, true type, reported type)` the profit is maximized
/// over deviation maps exactly, because the optimal map picks the best
/// replacement per recommended action independently; the report carries that
/// maximizing map.
pub fn verify_communication_equilibrium(
    bg: &BayesianGame,
    policy: &TypeConditionalPolicy,
    tolerance: &FixedReal,
) -> Result<VerificationReport, GameError> {
    policy.validate(bg)?;
    let p = bg.precision();
    let n = bg.players();
    let mut candidates = Vec::new();
    let mut checked = 0u64;

    for i in 0..n {
        let k = bg.type_count(i);
        let actions = bg.actions()[i].len();
        let dev_maps: u64 = (actions as u64).pow(actions as u32);
        for true_t in 0..k {
            // marginal prior of the true type
            let mut marginal = FixedReal::zero(p);
            for tp_rank in 0..bg.type_profile_count() {
                if bg.type_profile_of_rank(tp_rank)[i] == true_t {
                    marginal = &marginal + bg.prior_at(tp_rank);
                }
            }
            if !marginal.is_positive() {
                continue;
            }
            for reported_t in 0..k {
                checked += dev_maps;
                // per recommended action, the scaled payoff of playing `alt` instead
                let mut by_rec: Vec<Vec<FixedReal>> =
                    vec![vec![FixedReal::zero(p); actions]; actions];
                let mut truthful_value = FixedReal::zero(p);

                for tp_rank in 0..bg.type_profile_count() {
                    let tp = bg.type_profile_of_rank(tp_rank);
                    if tp[i] != true_t {
                        continue;
                    }
                    let weight = bg.prior_at(tp_rank);
                    if !weight.is_positive() {
                        continue;
                    }
                    // truthful side: recommendations drawn at the true report
                    let truthful = &policy.per_type[tp_rank];
                    for (profile, prob) in truthful.support.iter().zip(&truthful.probs) {
                        let u = bg.payoff(tp_rank, i, bg.profile_rank(profile));
                        truthful_value = &truthful_value + &(&(weight * prob) * u);
                    }
                    // misreported side: recommendations drawn at the lied report,
                    // payoffs still evaluated at the true type profile
                    let mut lied_tp = tp.clone();
                    lied_tp[i] = reported_t;
                    let lied_rank = bg.type_profile_rank(&lied_tp);
                    let lied = &policy.per_type[lied_rank];
                    for (profile, prob) in lied.support.iter().zip(&lied.probs) {
                        let rec = profile[i];
                        for alt in 0..actions {
                            let mut played = profile.clone();
                            played[i] = alt;
                            let u = bg.payoff(tp_rank, i, bg.profile_rank(&played));
                            by_rec[rec][alt] = &by_rec[rec][alt] + &(&(weight * prob) * u);
                        }
                    }
                }

                // optimal deviation map: best alternative per recommendation
                let mut best_value = FixedReal::zero(p);
                let mut best_map = Vec::with_capacity(actions);
                for rec in 0..actions {
                    let (alt, value) = by_rec[rec]
                        .iter()
                        .enumerate()
                        .max_by(|(_, a), (_, b)| a.cmp(b))
                        .expect("nonempty action set");
                    best_value = &best_value + value;
                    best_map.push(alt);
                }
                // gains so far are scaled by the marginal prior of the true
                // type; divide back to get the conditional expectation
                let gain = &(&best_value - &truthful_value) / &marginal;
                candidates.push(Violation {
                    player: i,
                    description: format!(
                        "true type {} reported as {} with deviation map {:?}",
                        bg.types()[i][true_t],
                        bg.types()[i][reported_t],
                        best_map
                    ),
                    gain,
                });
            }
        }
    }
    Ok(VerificationReport::from_candidates(tolerance.clone(), checked, candidates))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::test_support::{fx, two_by_two};
    use crate::num::{FixedReal, DEFAULT_PRECISION as P};

    fn tol() -> FixedReal {
        FixedReal::pow2(32 - P as i32, P)
    }

    #[test]
    fn pure_nash_point_mass_passes() {
        // (a1,b1) is a Nash equilibrium of this coordination game
        let g = two_by_two([[2, 0], [0, 1]], [[1, 0], [0, 2]]);
        let dist = ProfileDistribution::point_mass(vec![0, 0], P);
        let report = verify_correlated_equilibrium(&g, &dist, &tol()).unwrap();
        assert!(report.pass, "{:?}", report.violations);
    }

    #[test]
    fn battle_of_sexes_mixture_over_nash_passes() {
        let g = two_by_two([[2, 0], [0, 1]], [[1, 0], [0, 2]]);
        let dist = ProfileDistribution {
            support: vec![vec![0, 0], vec![1, 1]],
            probs: vec![fx(1, 2), fx(1, 2)],
        };
        let report = verify_correlated_equilibrium(&g, &dist, &tol()).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn profitable_deviation_is_reported() {
        // prisoner's dilemma: cooperating point mass fails, defect dominates
        let g = two_by_two([[3, 0], [5, 1]], [[3, 5], [0, 1]]);
        let dist = ProfileDistribution::point_mass(vec![0, 0], P);
        let report = verify_correlated_equilibrium(&g, &dist, &tol()).unwrap();
        assert!(!report.pass);
        let worst = report.worst.unwrap();
        assert_eq!(worst.gain, fx(2, 1));
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn tolerance_is_monotone() {
        let g = two_by_two([[3, 0], [5, 1]], [[3, 5], [0, 1]]);
        let dist = ProfileDistribution::point_mass(vec![0, 0], P);
        let strict = verify_correlated_equilibrium(&g, &dist, &tol()).unwrap();
        let loose = verify_correlated_equilibrium(&g, &dist, &fx(10, 1)).unwrap();
        assert!(!strict.pass);
        assert!(loose.pass);
    }

    #[test]
    fn expected_payoffs_match_hand_computation() {
        let g = two_by_two([[2, 0], [0, 1]], [[1, 0], [0, 2]]);
        let point = ProfileDistribution::point_mass(vec![0, 0], P);
        assert_eq!(expected_payoffs(&g, &point).unwrap(), vec![fx(2, 1), fx(1, 1)]);
        let mixed = ProfileDistribution {
            support: vec![vec![0, 0], vec![1, 1]],
            probs: vec![fx(1, 2), fx(1, 2)],
        };
        assert_eq!(expected_payoffs(&g, &mixed).unwrap(), vec![fx(3, 2), fx(3, 2)]);
    }

    #[test]
    fn dimension_mismatch_is_a_usage_error() {
        let g = two_by_two([[2, 0], [0, 1]], [[1, 0], [0, 2]]);
        let bad = ProfileDistribution::point_mass(vec![0, 0, 0], P);
        assert!(verify_correlated_equilibrium(&g, &bad, &tol()).is_err());
    }
}
