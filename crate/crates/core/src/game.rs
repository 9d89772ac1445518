//! Dollar Game and Gonality Game sessions with an append-only move log.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dhar::{burn, dollar_game_winnable, q_reduce_traced, Stage};
use crate::divisor::{fire_set_times, Divisor};
use crate::error::Error;
use crate::graph::{GraphJson, Multigraph};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    /// Start from a given divisor and clear its debt.
    Dollar,
    /// Place `N` chips, take one chip of debt, clear it.
    Gonality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Placing,
    Sabotage,
    Firing,
    Won,
    Lost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Place { chips: Vec<i64> },
    Debt { vertex: usize, by_engine: bool },
    Fire { set: Vec<usize> },
    Resign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ending {
    DebtCleared,
    ProvedUnwinnable,
    Resigned,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("move not allowed in phase {0:?}")]
    OutOfPhase(Phase),
    #[error("illegal move: {0}")]
    Illegal(String),
    #[error(transparent)]
    Engine(#[from] Error),
}

/// Everything needed to rebuild a session: its setup and its moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub id: String,
    pub kind: GameKind,
    pub graph: GraphJson,
    /// Chip budget for the Gonality Game.
    #[serde(default)]
    pub budget: Option<u64>,
    /// Starting divisor for the Dollar Game.
    #[serde(default)]
    pub initial: Option<Vec<i64>>,
    pub log: Vec<Move>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSession {
    id: String,
    kind: GameKind,
    graph: Arc<Multigraph>,
    budget: Option<u64>,
    initial: Option<Vec<i64>>,
    phase: Phase,
    chips: Vec<i64>,
    placement: Option<Vec<i64>>,
    log: Vec<Move>,
    ending: Option<Ending>,
}

/// Suggested next move: fire `set` a total of `times` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hint {
    pub set: VertexSet,
    pub times: i64,
    pub stage: Stage,
    /// Vertex the suggestion works toward.
    pub toward: usize,
}

/// Wire view of a session.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SessionView {
    pub id: String,
    pub kind: GameKind,
    pub phase: Phase,
    pub graph: GraphJson,
    pub chips: Vec<i64>,
    pub degree: i64,
    pub budget: Option<u64>,
    pub placement: Option<Vec<i64>>,
    pub ending: Option<Ending>,
    pub log: Vec<Move>,
}

type GameResult<T> = std::result::Result<T, GameError>;

impl GameSession {
    pub fn new_gonality(id: impl Into<String>, graph: Arc<Multigraph>, budget: u64) -> GameResult<Self> {
        if !graph.is_connected() {
            return Err(Error::Disconnected.into());
        }
        let n = graph.vertex_count();
        Ok(GameSession {
            id: id.into(),
            kind: GameKind::Gonality,
            graph,
            budget: Some(budget),
            initial: None,
            phase: Phase::Placing,
            chips: vec![0; n],
            placement: None,
            log: Vec::new(),
            ending: None,
        })
    }

    pub fn new_dollar(id: impl Into<String>, graph: Arc<Multigraph>, initial: Vec<i64>) -> GameResult<Self> {
        if !graph.is_connected() {
            return Err(Error::Disconnected.into());
        }
        let d = Divisor::new(graph.clone(), initial.clone())?;
        let mut s = GameSession {
            id: id.into(),
            kind: GameKind::Dollar,
            graph,
            budget: None,
            initial: Some(initial.clone()),
            phase: Phase::Firing,
            chips: initial,
            placement: None,
            log: Vec::new(),
            ending: None,
        };
        s.settle(&d)?;
        Ok(s)
    }

    /// Rebuilds a session by replaying its log.
    pub fn from_record(record: &SessionRecord) -> GameResult<Self> {
        let graph = Arc::new(Multigraph::from_json(&record.graph)?);
        let mut s = match record.kind {
            GameKind::Gonality => {
                let budget = record
                    .budget
                    .ok_or_else(|| GameError::Illegal("gonality session without a budget".into()))?;
                GameSession::new_gonality(record.id.clone(), graph, budget)?
            }
            GameKind::Dollar => {
                let initial = record
                    .initial
                    .clone()
                    .ok_or_else(|| GameError::Illegal("dollar session without a divisor".into()))?;
                GameSession::new_dollar(record.id.clone(), graph, initial)?
            }
        };
        for m in &record.log {
            s.apply(m.clone())?;
        }
        Ok(s)
    }

    pub fn record(&self) -> SessionRecord {
        SessionRecord {
            id: self.id.clone(),
            kind: self.kind,
            graph: self.graph.to_json(),
            budget: self.budget,
            initial: self.initial.clone(),
            log: self.log.clone(),
        }
    }

    pub fn view(&self) -> SessionView {
        SessionView {
            id: self.id.clone(),
            kind: self.kind,
            phase: self.phase,
            graph: self.graph.to_json(),
            chips: self.chips.clone(),
            degree: self.chips.iter().sum(),
            budget: self.budget,
            placement: self.placement.clone(),
            ending: self.ending,
            log: self.log.clone(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn graph(&self) -> &Arc<Multigraph> {
        &self.graph
    }

    pub fn chips(&self) -> &[i64] {
        &self.chips
    }

    pub fn divisor(&self) -> Divisor {
        Divisor::from_raw(self.graph.clone(), self.chips.clone())
    }

    pub fn placement(&self) -> Option<&[i64]> {
        self.placement.as_deref()
    }

    pub fn ending(&self) -> Option<Ending> {
        self.ending
    }

    pub fn log(&self) -> &[Move] {
        &self.log
    }

    fn expect(&self, phase: Phase) -> GameResult<()> {
        if self.phase == phase {
            Ok(())
        } else {
            Err(GameError::OutOfPhase(self.phase))
        }
    }

    /// Applies a logged move. Engine debt placements are replayed as
    /// recorded.
    pub fn apply(&mut self, m: Move) -> GameResult<()> {
        match m {
            Move::Place { chips } => self.place(chips),
            Move::Debt { vertex, by_engine } => self.put_debt(vertex, by_engine),
            Move::Fire { set } => self.fire(&set),
            Move::Resign => self.resign(),
        }
    }

    /// Player A places the budgeted chips.
    pub fn place(&mut self, chips: Vec<i64>) -> GameResult<()> {
        self.expect(Phase::Placing)?;
        let d = Divisor::new(self.graph.clone(), chips.clone())?;
        if !d.is_effective() {
            return Err(GameError::Illegal("placements cannot contain debt".into()));
        }
        let budget = self.budget.unwrap_or(0) as i64;
        if d.degree() != budget {
            return Err(GameError::Illegal(format!(
                "placed {} chips but the budget is {budget}",
                d.degree()
            )));
        }
        self.chips = chips.clone();
        self.placement = Some(chips.clone());
        self.log.push(Move::Place { chips });
        self.phase = Phase::Sabotage;
        Ok(())
    }

    /// Player B puts one chip of debt on `vertex`.
    pub fn place_debt(&mut self, vertex: usize) -> GameResult<()> {
        self.put_debt(vertex, false)
    }

    /// The engine plays Player B: it tries each vertex in turn and keeps
    /// the first whose debt cannot be cleared, else it uses vertex 0.
    pub fn engine_debt(&mut self) -> GameResult<usize> {
        let choice = self.engine_choice()?;
        self.put_debt(choice, true)?;
        Ok(choice)
    }

    /// The vertex [`GameSession::engine_debt`] would pick, without moving.
    pub fn engine_choice(&self) -> GameResult<usize> {
        self.expect(Phase::Sabotage)?;
        for v in 0..self.graph.vertex_count() {
            let mut chips = self.chips.clone();
            chips[v] -= 1;
            if !dollar_game_winnable(&Divisor::from_raw(self.graph.clone(), chips))? {
                return Ok(v);
            }
        }
        Ok(0)
    }

    /// Records a debt placement chosen elsewhere by the engine.
    pub fn engine_debt_at(&mut self, vertex: usize) -> GameResult<()> {
        self.put_debt(vertex, true)
    }

    fn put_debt(&mut self, vertex: usize, by_engine: bool) -> GameResult<()> {
        self.expect(Phase::Sabotage)?;
        self.graph.check_vertex(vertex)?;
        self.chips[vertex] -= 1;
        self.log.push(Move::Debt { vertex, by_engine });
        self.phase = Phase::Firing;
        let d = self.divisor();
        self.settle(&d)
    }

    /// Decides whether the firing phase is already over.
    fn settle(&mut self, d: &Divisor) -> GameResult<()> {
        if d.is_effective() {
            self.finish(Phase::Won, Ending::DebtCleared);
        } else if !dollar_game_winnable(d)? {
            self.finish(Phase::Lost, Ending::ProvedUnwinnable);
        }
        Ok(())
    }

    fn finish(&mut self, phase: Phase, ending: Ending) {
        self.phase = phase;
        self.ending = Some(ending);
    }

    /// Player A fires every vertex of `set` once.
    pub fn fire(&mut self, set: &[usize]) -> GameResult<()> {
        self.expect(Phase::Firing)?;
        let s = VertexSet::from(set);
        self.graph.check_set(&s)?;
        if s.is_empty() {
            return Err(GameError::Illegal("fire at least one vertex".into()));
        }
        let mut chips = self.chips.clone();
        fire_set_times(&self.graph, &mut chips, &s, 1)?;
        self.chips = chips;
        self.log.push(Move::Fire { set: s.to_vec() });
        if self.chips.iter().all(|&c| c >= 0) {
            self.finish(Phase::Won, Ending::DebtCleared);
        }
        Ok(())
    }

    pub fn resign(&mut self) -> GameResult<()> {
        if matches!(self.phase, Phase::Won | Phase::Lost) {
            return Err(GameError::OutOfPhase(self.phase));
        }
        self.log.push(Move::Resign);
        self.finish(Phase::Lost, Ending::Resigned);
        Ok(())
    }

    /// Next set-firing toward clearing the debt on the first vertex in
    /// debt: the unburned set when only that vertex owes, otherwise the
    /// first debt-clearing move.
    pub fn hint(&self) -> GameResult<Hint> {
        self.expect(Phase::Firing)?;
        let d = self.divisor();
        let debtors: Vec<usize> = (0..self.chips.len()).filter(|&v| self.chips[v] < 0).collect();
        let q = debtors[0];
        if debtors.len() == 1 {
            let outcome = burn(&d, q)?;
            if !outcome.all_burned() {
                return Ok(Hint {
                    set: outcome.unburned,
                    times: 1,
                    stage: Stage::Burning,
                    toward: q,
                });
            }
        }
        let red = q_reduce_traced(&d, q)?;
        let step = red
            .steps
            .into_iter()
            .next()
            .ok_or_else(|| GameError::Illegal("no move can clear this debt".into()))?;
        Ok(Hint {
            set: step.set,
            times: step.times,
            stage: step.stage,
            toward: q,
        })
    }
}
