//! Exact event-driven simulation of the N-agent anticonformity dynamics.
//!
//! At each event a listener `i` is chosen and moves away from the opinion
//! stated by a speaker: toward −1 (`x − μ₋(1+x)`) when the stated opinion is
//! +1, toward +1 (`x + μ₊(1−x)`) when it is −1. Every agent listens at rate
//! one, so events arrive at total rate `N`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::dist::InitialLaw;
use crate::error::{Error, Result};
use crate::params::{MeanCurve, ModelParams};
use crate::rng::{RngSpec, SimRng};

/// Upper bound on stored snapshots per run (each costs `N` floats).
pub const MAX_SNAPSHOTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbmScheme {
    /// Ordered pair `(i, j)`, `i != j`; the speaker states +1 with
    /// probability `(1 + x_j)/2`.
    PairwiseGillespie,
    /// Per-agent rate-1 clocks; listener `i` moves up iff `u < (1 − A_i)/2`
    /// with `A_i` the average opinion of the other agents.
    ThinnedPerAgent,
}

impl fmt::Display for AbmScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AbmScheme::PairwiseGillespie => "pairwise",
            AbmScheme::ThinnedPerAgent => "thinned",
        })
    }
}

impl FromStr for AbmScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pairwise" | "pairwise-gillespie" => Ok(AbmScheme::PairwiseGillespie),
            "thinned" | "thinned-per-agent" => Ok(AbmScheme::ThinnedPerAgent),
            other => Err(Error::Config(format!(
                "unknown scheme `{other}` (expected `pairwise` or `thinned`)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    TowardPlus,
    TowardMinus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub agent: usize,
    pub direction: Direction,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleState {
    opinions: Vec<f64>,
    time: f64,
    sum: f64,
    events_since_resum: usize,
}

impl EnsembleState {
    pub fn new(opinions: Vec<f64>, time: f64) -> Result<Self> {
        if opinions.len() < 2 {
            return Err(Error::TooFewAgents(opinions.len()));
        }
        if let Some(&x) = opinions.iter().find(|x| !(-1.0..=1.0).contains(*x)) {
            return Err(Error::Config(format!("opinion {x} lies outside [-1, 1]")));
        }
        if !(time >= 0.0) {
            return Err(Error::Config(format!("time must be nonnegative, got {time}")));
        }
        let sum = opinions.iter().sum();
        Ok(Self {
            opinions,
            time,
            sum,
            events_since_resum: 0,
        })
    }

    /// `n` i.i.d. draws from `law` at time 0.
    pub fn sample<R: Rng + ?Sized>(law: &InitialLaw, n: usize, rng: &mut R) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewAgents(n));
        }
        let opinions = (0..n).map(|_| law.sample(rng)).collect();
        Self::new(opinions, 0.0)
    }

    pub fn opinions(&self) -> &[f64] {
        &self.opinions
    }

    pub fn into_opinions(self) -> Vec<f64> {
        self.opinions
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn n_agents(&self) -> usize {
        self.opinions.len()
    }

    /// Running sum `S = Σ x_i`, maintained incrementally.
    pub fn sum(&self) -> f64 {
        self.sum
    }

    /// Average opinion of all agents other than `i`.
    pub fn avg_excluding(&self, i: usize) -> f64 {
        (self.sum - self.opinions[i]) / (self.opinions.len() - 1) as f64
    }

    /// Waiting time to the next event (rate `N`).
    pub fn next_wait<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let e: f64 = rng.sample(Exp1);
        e / self.opinions.len() as f64
    }

    /// Applies one interaction without advancing time.
    pub fn jump<R: Rng + ?Sized>(&mut self, params: &ModelParams, scheme: AbmScheme, rng: &mut R) -> Jump {
        let n = self.opinions.len();
        let i = rng.random_range(0..n);
        let up = match scheme {
            AbmScheme::PairwiseGillespie => {
                let mut j = rng.random_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let speaker_states_plus = rng.random::<f64>() < 0.5 * (1.0 + self.opinions[j]);
                !speaker_states_plus
            }
            AbmScheme::ThinnedPerAgent => rng.random::<f64>() < ModelParams::prob_plus(self.avg_excluding(i)),
        };
        self.apply(params, i, up)
    }

    fn apply(&mut self, params: &ModelParams, i: usize, up: bool) -> Jump {
        let before = self.opinions[i];
        let (after, direction) = if up {
            (params.map_plus(before), Direction::TowardPlus)
        } else {
            (params.map_minus(before), Direction::TowardMinus)
        };
        self.opinions[i] = after;
        self.sum += after - before;
        self.events_since_resum += 1;
        if self.events_since_resum >= self.opinions.len() {
            self.resum();
        }
        Jump {
            agent: i,
            direction,
            before,
            after,
        }
    }

    fn resum(&mut self) {
        self.sum = self.opinions.iter().sum();
        self.events_since_resum = 0;
    }
}

/// One event: advances the clock by an exponential wait and applies a jump.
pub fn abm_step<R: Rng + ?Sized>(
    state: &mut EnsembleState,
    params: &ModelParams,
    scheme: AbmScheme,
    rng: &mut R,
) -> Jump {
    state.time += state.next_wait(rng);
    state.jump(params, scheme, rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub mean: f64,
    pub sum: f64,
    pub second_moment: f64,
}

pub fn observables(state: &EnsembleState) -> Observables {
    let n = state.n_agents() as f64;
    let sum: f64 = state.opinions.iter().sum();
    let sq: f64 = state.opinions.iter().map(|x| x * x).sum();
    Observables {
        mean: sum / n,
        sum,
        second_moment: sq / n,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub mean_opinion: Vec<f64>,
    pub second_moment: Vec<f64>,
    pub snapshots: Vec<(f64, Vec<f64>)>,
}

impl TrajectoryRecord {
    fn push(&mut self, t: f64, state: &EnsembleState, snapshot: bool) {
        let obs = observables(state);
        self.times.push(t);
        self.mean_opinion.push(obs.mean);
        self.second_moment.push(obs.second_moment);
        if snapshot {
            self.snapshots.push((t, state.opinions.clone()));
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbmConfig {
    pub n_agents: usize,
    pub t_end: f64,
    pub scheme: AbmScheme,
    pub record_times: Vec<f64>,
    /// Store the full opinion vector at every record time.
    pub snapshots: bool,
}

impl AbmConfig {
    pub fn new(n_agents: usize, t_end: f64, scheme: AbmScheme) -> Self {
        Self {
            n_agents,
            t_end,
            scheme,
            record_times: Vec::new(),
            snapshots: false,
        }
    }

    pub fn with_record_times(mut self, times: Vec<f64>) -> Self {
        self.record_times = times;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_agents < 2 {
            return Err(Error::TooFewAgents(self.n_agents));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::Config(format!("t_end must be finite and >= 0, got {}", self.t_end)));
        }
        validate_record_times(&self.record_times, self.t_end)?;
        if self.snapshots && self.record_times.len() > MAX_SNAPSHOTS {
            return Err(Error::Config(format!(
                "at most {MAX_SNAPSHOTS} snapshots per run, requested {}",
                self.record_times.len()
            )));
        }
        Ok(())
    }
}

pub(crate) fn validate_record_times(times: &[f64], t_end: f64) -> Result<()> {
    if times.iter().any(|&t| !(0.0..=t_end).contains(&t)) {
        return Err(Error::Config(format!("record times must lie in [0, {t_end}]")));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config("record times must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AbmRun {
    pub record: TrajectoryRecord,
    pub final_state: EnsembleState,
}

/// Runs the event loop from an existing state up to `t_end`, recording
/// observables at each requested time.
pub fn run_from(
    mut state: EnsembleState,
    params: &ModelParams,
    cfg: &AbmConfig,
    rng: &mut SimRng,
) -> Result<AbmRun> {
    cfg.validate()?;
    let mut record = TrajectoryRecord::default();
    let mut next_rec = 0usize;
    loop {
        let wait = state.next_wait(rng);
        let t_next = state.time + wait;
        while next_rec < cfg.record_times.len() && cfg.record_times[next_rec] < t_next {
            record.push(cfg.record_times[next_rec], &state, cfg.snapshots);
            next_rec += 1;
        }
        if t_next > cfg.t_end {
            state.time = cfg.t_end;
            break;
        }
        state.time = t_next;
        state.jump(params, cfg.scheme, rng);
    }
    Ok(AbmRun {
        record,
        final_state: state,
    })
}

/// i.i.d. `rho0` initialization followed by the event loop to `t_end`.
pub fn simulate_abm(params: &ModelParams, rho0: &InitialLaw, cfg: &AbmConfig, rng: &mut SimRng) -> Result<AbmRun> {
    cfg.validate()?;
    let state = EnsembleState::sample(rho0, cfg.n_agents, rng)?;
    run_from(state, params, cfg, rng)
}

/// Seeds for [`two_copy_run`]: the two initial draws and the shared dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoCopySeeds {
    pub init_a: RngSpec,
    pub init_b: RngSpec,
    pub dynamics: RngSpec,
}

/// Two ensembles driven by the same event times, listeners and uniforms,
/// started from independent draws of `rho0_a` and `rho0_b`. Returns the
/// per-agent mean absolute difference `(1/N) Σ |x_i − x̃_i|` at each record time.
pub fn two_copy_run(
    params: &ModelParams,
    n_agents: usize,
    rho0_a: &InitialLaw,
    rho0_b: &InitialLaw,
    record_times: &[f64],
    seeds: TwoCopySeeds,
) -> Result<Vec<(f64, f64)>> {
    if !params.is_symmetric() {
        return Err(Error::Config(
            "two-copy stability is stated for mu_plus == mu_minus".into(),
        ));
    }
    let t_end = record_times.last().copied().unwrap_or(0.0);
    validate_record_times(record_times, t_end)?;
    let mut a = EnsembleState::sample(rho0_a, n_agents, &mut seeds.init_a.rng())?;
    let mut b = EnsembleState::sample(rho0_b, n_agents, &mut seeds.init_b.rng())?;
    let mut rng = seeds.dynamics.rng();
    let dist = |a: &EnsembleState, b: &EnsembleState| {
        a.opinions.iter().zip(&b.opinions).map(|(x, y)| (x - y).abs()).sum::<f64>() / n_agents as f64
    };
    let mut out = Vec::with_capacity(record_times.len());
    let mut next_rec = 0usize;
    let mut t = 0.0;
    loop {
        let t_next = t + a.next_wait(&mut rng);
        while next_rec < record_times.len() && record_times[next_rec] < t_next {
            out.push((record_times[next_rec], dist(&a, &b)));
            next_rec += 1;
        }
        if t_next > t_end {
            break;
        }
        t = t_next;
        let i = rng.random_range(0..n_agents);
        let u: f64 = rng.random();
        let up_a = u < ModelParams::prob_plus(a.avg_excluding(i));
        let up_b = u < ModelParams::prob_plus(b.avg_excluding(i));
        a.apply(params, i, up_a);
        b.apply(params, i, up_b);
    }
    Ok(out)
}

/// Synchronous coupling of the N-agent system with N independent mean-field
/// processes sharing each agent's clock and uniforms (the mean-field copy
/// uses the threshold `(1 − m_t)/2`). Returns `(1/N) Σ |X_i − Z_i|` at each
/// record time, an upper bound on the normalized `W₁` between the N-agent
/// law and the product of mean-field marginals.
pub fn meanfield_coupling_run(
    params: &ModelParams,
    n_agents: usize,
    rho0: &InitialLaw,
    record_times: &[f64],
    rng: &mut SimRng,
) -> Result<Vec<(f64, f64)>> {
    let t_end = record_times.last().copied().unwrap_or(0.0);
    validate_record_times(record_times, t_end)?;
    let curve = MeanCurve::new(params, rho0.mean())?;
    let mut x = EnsembleState::sample(rho0, n_agents, rng)?;
    let mut z = x.opinions.clone();
    let dist = |x: &EnsembleState, z: &[f64]| {
        x.opinions.iter().zip(z).map(|(a, b)| (a - b).abs()).sum::<f64>() / n_agents as f64
    };
    let mut out = Vec::with_capacity(record_times.len());
    let mut next_rec = 0usize;
    let mut t = 0.0;
    loop {
        let t_next = t + x.next_wait(rng);
        while next_rec < record_times.len() && record_times[next_rec] < t_next {
            out.push((record_times[next_rec], dist(&x, &z)));
            next_rec += 1;
        }
        if t_next > t_end {
            break;
        }
        t = t_next;
        let i = rng.random_range(0..n_agents);
        let u: f64 = rng.random();
        let up_x = u < ModelParams::prob_plus(x.avg_excluding(i));
        x.apply(params, i, up_x);
        z[i] = if u < ModelParams::prob_plus(curve.eval(t)) {
            params.map_plus(z[i])
        } else {
            params.map_minus(z[i])
        };
    }
    Ok(out)
}
