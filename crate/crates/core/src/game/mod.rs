//! Normal-form and Bayesian game model with profile enumeration.
//!
//! Profiles and type profiles are ranked lexicographically with player 0 as
//! the most significant coordinate; every table in the crate is stored in
//! that order ("profile-major").

mod format;
mod verify;

pub use format::{parse_game_str, GameFile, LoadedGame, PolicyFileEntry};
pub use verify::{
    expected_payoffs, verify_communication_equilibrium, verify_correlated_equilibrium,
    VerificationReport, Violation,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::{FixedReal, NumError};

#[derive(Debug, Error)]
pub enum GameError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid game: {0}")]
    Invalid(String),
    #[error("policy missing distribution for positive-prior type profile {0}")]
    MissingPolicy(usize),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Finite strategic-form game with complete information.
#[derive(Clone, Debug)]
pub struct Game {
    actions: Vec<Vec<String>>,
    /// `payoffs[profile_rank][player]`
    payoffs: Vec<Vec<FixedReal>>,
    precision: u32,
}

impl Game {
    pub fn new(
        actions: Vec<Vec<String>>,
        payoffs: Vec<Vec<FixedReal>>,
        precision: u32,
    ) -> Result<Self, GameError> {
        let n = actions.len();
        if n < 2 {
            return Err(GameError::Invalid("need at least two players".into()));
        }
        if actions.iter().any(|a| a.is_empty()) {
            return Err(GameError::Invalid("every player needs at least one action".into()));
        }
        let profile_count: usize = actions.iter().map(|a| a.len()).product();
        if payoffs.len() != profile_count {
            return Err(GameError::Dimension(format!(
                "expected {profile_count} payoff rows, found {}",
                payoffs.len()
            )));
        }
        if payoffs.iter().any(|row| row.len() != n) {
            return Err(GameError::Dimension("payoff row length must equal player count".into()));
        }
        Ok(Game { actions, payoffs, precision })
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn action_count(&self, player: usize) -> usize {
        self.actions[player].len()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn profile_count(&self) -> usize {
        self.actions.iter().map(|a| a.len()).product()
    }

    pub fn profile_rank(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.players());
        let mut rank = 0;
        for (i, &a) in profile.iter().enumerate() {
            debug_assert!(a < self.action_count(i));
            rank = rank * self.action_count(i) + a;
        }
        rank
    }

    pub fn profile_of_rank(&self, mut rank: usize) -> Vec<usize> {
        let n = self.players();
        let mut profile = vec![0; n];
        for i in (0..n).rev() {
            let k = self.action_count(i);
            profile[i] = rank % k;
            rank /= k;
        }
        profile
    }

    /// Payoff of `player` at the given profile.
    pub fn payoff(&self, player: usize, profile: &[usize]) -> &FixedReal {
        &self.payoffs[self.profile_rank(profile)][player]
    }

    pub fn payoff_at_rank(&self, player: usize, rank: usize) -> &FixedReal {
        &self.payoffs[rank][player]
    }
}

/// Distribution over an explicit support of pure strategy profiles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileDistribution {
    /// `support[q]` is the profile a(q), one action index per player.
    pub support: Vec<Vec<usize>>,
    /// `probs[q]` is the probability of a(q).
    pub probs: Vec<FixedReal>,
}

impl ProfileDistribution {
    pub fn validate(&self, game: &Game) -> Result<(), GameError> {
        if self.support.len() != self.probs.len() {
            return Err(GameError::Dimension("support and probs lengths differ".into()));
        }
        if self.support.is_empty() {
            return Err(GameError::Invalid("empty support".into()));
        }
        for a in &self.support {
            if a.len() != game.players() {
                return Err(GameError::Dimension("profile length must equal player count".into()));
            }
            for (i, &ai) in a.iter().enumerate() {
                if ai >= game.action_count(i) {
                    return Err(GameError::Invalid(format!(
                        "action index {ai} out of range for player {i}"
                    )));
                }
            }
        }
        let p = game.precision();
        let mut sum = FixedReal::zero(p);
        for prob in &self.probs {
            if prob.is_negative() {
                return Err(GameError::Invalid("negative probability".into()));
            }
            sum = &sum + prob;
        }
        let err = (&sum - &FixedReal::one(p)).abs();
        if err > FixedReal::pow2(8 - p as i32, p) {
            return Err(GameError::Invalid(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn has_full_support(&self) -> bool {
        self.probs.iter().all(|p| p.is_positive())
    }

    /// Point mass on a single profile.
    pub fn point_mass(profile: Vec<usize>, precision: u32) -> Self {
        ProfileDistribution { support: vec![profile], probs: vec![FixedReal::one(precision)] }
    }
}

/// Game with incomplete information: payoffs depend on the type profile.
#[derive(Clone, Debug)]
pub struct BayesianGame {
    actions: Vec<Vec<String>>,
    types: Vec<Vec<String>>,
    /// `payoffs[type_profile_rank][profile_rank][player]`
    payoffs: Vec<Vec<Vec<FixedReal>>>,
    /// `prior[type_profile_rank]`, lexicographic over types
    prior: Vec<FixedReal>,
    precision: u32,
}

impl BayesianGame {
    pub fn new(
        actions: Vec<Vec<String>>,
        types: Vec<Vec<String>>,
        payoffs: Vec<Vec<Vec<FixedReal>>>,
        prior: Vec<FixedReal>,
        precision: u32,
    ) -> Result<Self, GameError> {
        let n = actions.len();
        if types.len() != n {
            return Err(GameError::Dimension("types must cover every player".into()));
        }
        if types.iter().any(|t| t.is_empty()) {
            return Err(GameError::Invalid("every player needs at least one type".into()));
        }
        let t_count: usize = types.iter().map(|t| t.len()).product();
        if payoffs.len() != t_count || prior.len() != t_count {
            return Err(GameError::Dimension(format!(
                "expected {t_count} type-profile entries, found {} payoffs / {} prior",
                payoffs.len(),
                prior.len()
            )));
        }
        let mut sum = FixedReal::zero(precision);
        for p in &prior {
            if p.is_negative() {
                return Err(GameError::Invalid("negative prior probability".into()));
            }
            sum = &sum + p;
        }
        if (&sum - &FixedReal::one(precision)).abs()
            > FixedReal::pow2(8 - precision as i32, precision)
        {
            return Err(GameError::Invalid(format!("prior sums to {sum}, not 1")));
        }
        // validate each per-type payoff table through the Game constructor
        for table in &payoffs {
            Game::new(actions.clone(), table.clone(), precision)?;
        }
        Ok(BayesianGame { actions, types, payoffs, prior, precision })
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn types(&self) -> &[Vec<String>] {
        &self.types
    }

    pub fn type_count(&self, player: usize) -> usize {
        self.types[player].len()
    }

    pub fn type_profile_count(&self) -> usize {
        self.types.iter().map(|t| t.len()).product()
    }

    pub fn type_profile_rank(&self, tp: &[usize]) -> usize {
        let mut rank = 0;
        for (i, &t) in tp.iter().enumerate() {
            debug_assert!(t < self.type_count(i));
            rank = rank * self.type_count(i) + t;
        }
        rank
    }

    pub fn type_profile_of_rank(&self, mut rank: usize) -> Vec<usize> {
        let n = self.players();
        let mut tp = vec![0; n];
        for i in (0..n).rev() {
            let k = self.type_count(i);
            tp[i] = rank % k;
            rank /= k;
        }
        tp
    }

    /// Mixed-radix rank of an action profile (shape shared by all type profiles).
    pub fn profile_rank(&self, profile: &[usize]) -> usize {
        let mut rank = 0;
        for (i, &a) in profile.iter().enumerate() {
            debug_assert!(a < self.actions[i].len());
            rank = rank * self.actions[i].len() + a;
        }
        rank
    }

    pub fn prior(&self) -> &[FixedReal] {
        &self.prior
    }

    pub fn prior_at(&self, tp_rank: usize) -> &FixedReal {
        &self.prior[tp_rank]
    }

    pub fn has_full_support_prior(&self) -> bool {
        self.prior.iter().all(|p| p.is_positive())
    }

    /// The complete-information game played at one type profile.
    pub fn game_at(&self, tp_rank: usize) -> Game {
        Game {
            actions: self.actions.clone(),
            payoffs: self.payoffs[tp_rank].clone(),
            precision: self.precision,
        }
    }

    pub fn payoff(&self, tp_rank: usize, player: usize, profile_rank: usize) -> &FixedReal {
        &self.payoffs[tp_rank][profile_rank][player]
    }
}

/// Per-type-profile strategy distributions, indexed by type-profile rank.
#[derive(Clone, Debug)]
pub struct TypeConditionalPolicy {
    pub per_type: Vec<ProfileDistribution>,
}

impl TypeConditionalPolicy {
    pub fn validate(&self, bg: &BayesianGame) -> Result<(), GameError> {
        if self.per_type.len() != bg.type_profile_count() {
            return Err(GameError::Dimension(format!(
                "policy covers {} type profiles, game has {}",
                self.per_type.len(),
                bg.type_profile_count()
            )));
        }
        for (t, dist) in self.per_type.iter().enumerate() {
            if bg.prior_at(t).is_positive() && dist.is_empty() {
                return Err(GameError::MissingPolicy(t));
            }
            dist.validate(&bg.game_at(t))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::num::{rational_to_fixed, Rational, DEFAULT_PRECISION as P};
    use num_bigint::BigInt;

    pub fn fx(n: i64, d: i64) -> FixedReal {
        rational_to_fixed(&Rational::new(BigInt::from(n), BigInt::from(d)), P)
    }

    pub fn two_by_two(u1: [[i64; 2]; 2], u2: [[i64; 2]; 2]) -> Game {
        let actions = vec![vec!["a1".into(), "a2".into()], vec!["b1".into(), "b2".into()]];
        let mut payoffs = Vec::new();
        for r in 0..2 {
            for c in 0..2 {
                payoffs.push(vec![fx(u1[r][c], 1), fx(u2[r][c], 1)]);
            }
        }
        Game::new(actions, payoffs, P).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use crate::num::DEFAULT_PRECISION as P;

    #[test]
    fn profile_rank_round_trip() {
        let g = two_by_two([[2, 0], [0, 1]], [[1, 0], [0, 2]]);
        for rank in 0..g.profile_count() {
            assert_eq!(g.profile_rank(&g.profile_of_rank(rank)), rank);
        }
        assert_eq!(g.profile_rank(&[1, 0]), 2);
    }

    #[test]
    fn distribution_validation_catches_bad_sums() {
        let g = two_by_two([[2, 0], [0, 1]], [[1, 0], [0, 2]]);
        let bad = ProfileDistribution {
            support: vec![vec![0, 0], vec![1, 1]],
            probs: vec![fx(1, 2), fx(1, 3)],
        };
        assert!(bad.validate(&g).is_err());
        let good = ProfileDistribution {
            support: vec![vec![0, 0], vec![1, 1]],
            probs: vec![fx(1, 2), fx(1, 2)],
        };
        good.validate(&g).unwrap();
    }

    #[test]
    fn rejects_malformed_games() {
        assert!(Game::new(vec![vec!["x".into()]], vec![vec![fx(0, 1)]], P).is_err());
        assert!(Game::new(
            vec![vec!["x".into()], vec!["y".into(), "z".into()]],
            vec![vec![fx(0, 1), fx(0, 1)]],
            P
        )
        .is_err());
    }
}
