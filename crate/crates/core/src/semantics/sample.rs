//! Semantic refutation by sampling. A miss proves nothing.
//!
//! Candidates come in three stages: the grid `{0, 1/4, 1/2, 3/4, 1}` on every
//! coordinate when it has at most `15625` points, otherwise the corners
//! `{0, 1}` when there are at most `65536` of them; then `trials` seeded
//! random valuations. Each random valuation draws one denominator
//! `D <= 64` and numerators in `0..=D`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::{grid_size, sweep, GridFilter, GridFormula};
use super::{eval, is_designated, Filter, Valuation};
use crate::error::{Error, Result};
use crate::formula::{Formula, LogicId};

const GRID_DEN: i64 = 4;
const GRID_LIMIT: u128 = 15_625;
const CORNER_LIMIT: u128 = 65_536;
const MAX_DEN: i64 = 64;

/// Knobs shared by the samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub trials: usize,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            trials: 10_000,
            seed: 0,
        }
    }
}

/// Looks for a valuation that designates every premise but not `f`.
pub fn entails_sample(
    gamma: &[Formula],
    f: &Formula,
    d: &Filter,
    logic: LogicId,
    cfg: SampleConfig,
) -> Result<Option<Valuation>> {
    let mut all = gamma.to_vec();
    all.push(f.clone());
    let g = GridFormula::compile_many(&all, logic)?;
    let coords = 2 * g.atoms().len();
    let premises = gamma.len();
    let mut scratch = Vec::new();
    let mut hit: Option<(i64, Vec<i64>)> = None;

    let mut try_den = |den: i64, hit: &mut Option<(i64, Vec<i64>)>| -> Result<()> {
        let gf = GridFilter::new(d, den)?;
        sweep(den, coords, |p| {
            let vals = g.eval(den, p, &mut scratch);
            if vals[..premises].iter().all(|v| gf.designated(*v)) && !gf.designated(vals[premises])
            {
                *hit = Some((den, p.to_vec()));
                true
            } else {
                false
            }
        });
        Ok(())
    };
    if grid_size(GRID_DEN, coords) <= GRID_LIMIT {
        try_den(GRID_DEN, &mut hit)?;
    } else if grid_size(1, coords) <= CORNER_LIMIT {
        try_den(1, &mut hit)?;
    }

    if hit.is_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let filters: Vec<GridFilter> = (1..=MAX_DEN)
            .map(|den| GridFilter::new(d, den))
            .collect::<Result<_>>()?;
        let mut point = vec![0i64; coords];
        for _ in 0..cfg.trials {
            let den = rng.gen_range(1..=MAX_DEN);
            for c in point.iter_mut() {
                *c = rng.gen_range(0..=den);
            }
            let gf = filters[(den - 1) as usize];
            let vals = g.eval(den, &point, &mut scratch);
            if vals[..premises].iter().all(|v| gf.designated(*v)) && !gf.designated(vals[premises])
            {
                hit = Some((den, point.clone()));
                break;
            }
        }
    }

    let Some((den, point)) = hit else {
        return Ok(None);
    };
    let v = g.valuation(den, &point);
    for p in gamma {
        if !is_designated(&eval(p, &v, logic)?, d) {
            return Err(Error::Internal("grid and exact evaluation disagree".into()));
        }
    }
    if is_designated(&eval(f, &v, logic)?, d) {
        return Err(Error::Internal("grid and exact evaluation disagree".into()));
    }
    Ok(Some(v))
}

/// Looks for a valuation under which `f` is not designated.
pub fn sample_falsify(
    f: &Formula,
    d: &Filter,
    logic: LogicId,
    cfg: SampleConfig,
) -> Result<Option<Valuation>> {
    entails_sample(&[], f, d, logic, cfg)
}
