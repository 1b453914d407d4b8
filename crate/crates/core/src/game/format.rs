//! Game file schema: a JSON object with expression-valued numeric fields so
//! rational literals survive parsing exactly.
//!
//! Complete-information games carry `players`, `actions`, and `payoffs`
//! (profile-major, one row per profile in lexicographic order with player 0
//! most significant, one expression per player). Bayesian games add `types`,
//! `prior` (one expression per type profile, same ordering convention),
//! `type_payoffs` (one payoff table per type profile), and optionally
//! `policy` (one support/probs block per type profile).

use serde::{Deserialize, Serialize};

use super::{BayesianGame, Game, GameError, ProfileDistribution, TypeConditionalPolicy};
use crate::num::{FixedReal, RealExpression};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolicyFileEntry {
    pub support: Vec<Vec<usize>>,
    pub probs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameFile {
    pub players: usize,
    pub actions: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payoffs: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prior: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_payoffs: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<Vec<PolicyFileEntry>>,
}

pub enum LoadedGame {
    Complete(Game),
    Bayesian { game: BayesianGame, policy: Option<TypeConditionalPolicy> },
}

fn eval(expr: &str, precision: u32) -> Result<FixedReal, GameError> {
    Ok(RealExpression::parse(expr)?.eval_fixed(precision)?)
}

fn eval_table(rows: &[Vec<String>], precision: u32) -> Result<Vec<Vec<FixedReal>>, GameError> {
    rows.iter()
        .map(|row| row.iter().map(|e| eval(e, precision)).collect())
        .collect()
}

pub fn parse_game_str(text: &str, precision: u32) -> Result<LoadedGame, GameError> {
    let file: GameFile = serde_json::from_str(text)
        .map_err(|e| GameError::Invalid(format!("game file is not valid JSON: {e}")))?;
    if file.actions.len() != file.players {
        return Err(GameError::Dimension(format!(
            "players={} but {} action lists",
            file.players,
            file.actions.len()
        )));
    }
    if let Some(types) = &file.types {
        let prior_exprs = file
            .prior
            .as_ref()
            .ok_or_else(|| GameError::Invalid("bayesian game needs a prior".into()))?;
        let tables = file
            .type_payoffs
            .as_ref()
            .ok_or_else(|| GameError::Invalid("bayesian game needs type_payoffs".into()))?;
        let prior: Vec<FixedReal> = prior_exprs
            .iter()
            .map(|e| eval(e, precision))
            .collect::<Result<_, _>>()?;
        let payoffs: Vec<Vec<Vec<FixedReal>>> = tables
            .iter()
            .map(|t| eval_table(t, precision))
            .collect::<Result<_, _>>()?;
        let game =
            BayesianGame::new(file.actions.clone(), types.clone(), payoffs, prior, precision)?;
        let policy = match &file.policy {
            Some(entries) => {
                let per_type: Vec<ProfileDistribution> = entries
                    .iter()
                    .map(|e| {
                        Ok(ProfileDistribution {
                            support: e.support.clone(),
                            probs: e
                                .probs
                                .iter()
                                .map(|s| eval(s, precision))
                                .collect::<Result<_, GameError>>()?,
                        })
                    })
                    .collect::<Result<_, GameError>>()?;
                let policy = TypeConditionalPolicy { per_type };
                policy.validate(&game)?;
                Some(policy)
            }
            None => None,
        };
        Ok(LoadedGame::Bayesian { game, policy })
    } else {
        let rows = file
            .payoffs
            .as_ref()
            .ok_or_else(|| GameError::Invalid("complete-information game needs payoffs".into()))?;
        let payoffs = eval_table(rows, precision)?;
        Ok(LoadedGame::Complete(Game::new(file.actions.clone(), payoffs, precision)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::DEFAULT_PRECISION as P;

    #[test]
    fn parses_complete_game() {
        let text = r#"{
            "players": 2,
            "actions": [["a1","a2"],["b1","b2"]],
            "payoffs": [["2","1"],["0","0"],["0","0"],["1","2"]]
        }"#;
        let LoadedGame::Complete(g) = parse_game_str(text, P).unwrap() else {
            panic!("expected complete game");
        };
        assert_eq!(g.players(), 2);
        assert_eq!(g.payoff(0, &[1, 1]), &FixedReal::from_integer(1, P));
    }

    #[test]
    fn parses_bayesian_game_with_policy() {
        let text = r#"{
            "players": 2,
            "actions": [["a1","a2"],["b1","b2"]],
            "types": [["hi","lo"],["x"]],
            "prior": ["1/2","1/2"],
            "type_payoffs": [
                [["1","1"],["0","0"],["0","0"],["1","1"]],
                [["2","2"],["0","0"],["0","0"],["2","2"]]
            ],
            "policy": [
                {"support": [[0,0],[1,1]], "probs": ["sqrt(2)/2","(2-sqrt(2))/2"]},
                {"support": [[0,0]], "probs": ["1"]}
            ]
        }"#;
        let LoadedGame::Bayesian { game, policy } = parse_game_str(text, P).unwrap() else {
            panic!("expected bayesian game");
        };
        assert_eq!(game.type_profile_count(), 2);
        assert!(policy.unwrap().per_type[0].has_full_support());
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(parse_game_str("not json", P).is_err());
        assert!(parse_game_str(r#"{"players": 2, "actions": [["a"]]}"#, P).is_err());
        let bad_expr = r#"{
            "players": 2,
            "actions": [["a1","a2"],["b1","b2"]],
            "payoffs": [["2","1"],["0","0"],["0","oops"],["1","2"]]
        }"#;
        assert!(parse_game_str(bad_expr, P).is_err());
    }
}
