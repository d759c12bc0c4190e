//! Sandpile dynamics with a frozen base vertex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rank::{extreme_candidate_count, is_extreme};
use crate::riemann_roch::RRReport;
use crate::reduction::{reduced_unchecked, reps_unchecked};

fn check_config(game: &Game, v0: usize, d: &[i64]) -> Result<()> {
    game.check_base(v0)?;
    game.check_divisor(d)?;
    match (0..d.len()).find(|&v| v != v0 && d[v] < 0) {
        Some(v) => Err(Error::NotSandpileForm(v)),
        None => Ok(()),
    }
}

pub fn is_stable(game: &Game, v0: usize, d: &[i64]) -> bool {
    (0..d.len()).all(|v| v == v0 || d[v] < game.threshold(v))
}

/// Fires the lowest-index unstable vertex other than v0, one firing at a
/// time, until none is left. `max_steps` caps the number of firings.
pub fn stabilize(
    game: &Game,
    v0: usize,
    d: &[i64],
    max_steps: Option<u64>,
) -> Result<(Vec<i64>, Vec<i64>)> {
    check_config(game, v0, d)?;
    let n = d.len();
    let mut cur = d.to_vec();
    let mut fired = vec![0i64; n];
    let mut steps = 0u64;
    while let Some(v) = (0..n).find(|&v| v != v0 && cur[v] >= game.threshold(v)) {
        if max_steps.is_some_and(|cap| steps >= cap) {
            return Err(Error::StepCap(steps));
        }
        game.fire_vertex(&mut cur, v, 1);
        fired[v] += 1;
        steps += 1;
    }
    Ok((cur, fired))
}

/// Stabilization that fires unstable vertices in the order given by
/// `choose`, which picks an index into the current unstable list.
pub fn stabilize_with<F>(game: &Game, v0: usize, d: &[i64], mut choose: F) -> Result<Vec<i64>>
where
    F: FnMut(usize) -> usize,
{
    check_config(game, v0, d)?;
    let n = d.len();
    let mut cur = d.to_vec();
    loop {
        let unstable: Vec<usize> =
            (0..n).filter(|&v| v != v0 && cur[v] >= game.threshold(v)).collect();
        if unstable.is_empty() {
            return Ok(cur);
        }
        let v = unstable[choose(unstable.len()) % unstable.len()];
        game.fire_vertex(&mut cur, v, 1);
    }
}

/// ν = deg+ - 1 - D, the dual divisor of a stable configuration.
pub fn dual(game: &Game, d: &[i64]) -> Vec<i64> {
    game.thresholds().iter().zip(d).map(|(t, x)| t - 1 - x).collect()
}

/// Recurrent exactly when deg+ - 1 - D is v0-reduced.
pub fn is_recurrent(game: &Game, v0: usize, d: &[i64]) -> Result<bool> {
    check_config(game, v0, d)?;
    if let Some(v) = (0..d.len()).find(|&v| v != v0 && d[v] >= game.threshold(v)) {
        return Err(Error::NotStable(v));
    }
    Ok(reduced_unchecked(game, v0, &dual(game, d)))
}

/// Searches configurations D' with deg+(v) <= D'(v) <= deg+(v) + headroom off
/// v0 for one that stabilizes to D. One-sided: a false answer may only mean
/// the headroom is too small.
pub fn is_recurrent_oracle(game: &Game, v0: usize, d: &[i64], headroom: i64) -> Result<bool> {
    check_config(game, v0, d)?;
    let n = d.len();
    let others: Vec<usize> = (0..n).filter(|&v| v != v0).collect();
    let side = (headroom + 1) as u64;
    let total = side.pow(others.len() as u32);
    for mut idx in 0..total {
        let mut start = d.to_vec();
        for &v in &others {
            start[v] = game.threshold(v) + (idx % side) as i64;
            idx /= side;
        }
        let (stable, _) = stabilize(game, v0, &start, None)?;
        if others.iter().all(|&v| stable[v] == d[v]) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn default_headroom(game: &Game) -> i64 {
    2 * game.thresholds().into_iter().max().unwrap_or(1)
}

/// Stable recurrent configurations (v0 entry 0) that are minimal when the v0
/// entry is ignored. Recurrence is upward closed among stable
/// configurations, so minimality only needs the single-chip removals.
pub fn minimal_recurrents(game: &Game, v0: usize, budget: u128) -> Result<Vec<Vec<i64>>> {
    game.check_base(v0)?;
    let needed = extreme_candidate_count(game, v0);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let n = game.vertex_count();
    let recurrent = |d: &[i64]| reduced_unchecked(game, v0, &dual(game, d));
    let mut out = Vec::new();
    for mut idx in 0..needed {
        let mut d = vec![0i64; n];
        for v in (0..n).rev() {
            if v != v0 {
                let t = game.threshold(v) as u128;
                d[v] = (idx % t) as i64;
                idx /= t;
            }
        }
        if !recurrent(&d) {
            continue;
        }
        let minimal = (0..n).filter(|&v| v != v0 && d[v] > 0).all(|v| {
            let mut less = d.clone();
            less[v] -= 1;
            !recurrent(&less)
        });
        if minimal {
            out.push(d);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandpileWitness {
    pub minimal: Vec<i64>,
    /// D' = D + k e_0 with D' - 1 extreme, when such k exists.
    pub shifted: Option<Vec<i64>>,
    /// E_i ~ D' with E_i(v_i) = 0 and E_i(v_j) >= 1 elsewhere.
    pub witnesses: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandpileNaturalRR {
    pub criterion: bool,
    pub report_natural_rr: bool,
    pub agree: bool,
    /// Common degree of the D' - 1, when the criterion holds.
    pub common_degree: Option<i64>,
    pub details: Vec<SandpileWitness>,
}

/// Largest k with D + k e0 in Σ. Σ-membership is downward closed along the
/// e0 direction, so a doubling search followed by bisection finds it.
fn last_in_sigma(game: &Game, v0: usize, d: &[i64]) -> i64 {
    let w0 = game.weight()[v0];
    let at = |k: i64| {
        let mut x = d.to_vec();
        x[v0] += k;
        !crate::reduction::effective_unchecked(game, v0, &x)
    };
    // deg(D + k e0) < 0 is always in Σ.
    let mut lo = -(game.degree(d).max(0) / w0) - 1;
    debug_assert!(at(lo));
    let mut step = 1;
    let mut hi = lo + step;
    while at(hi) {
        lo = hi;
        step *= 2;
        hi = lo + step;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// For each vertex v_i, the v_i-reduced representative of `d` with value -1
/// at v_i, shifted up by one everywhere.
fn positive_witnesses(game: &Game, d: &[i64]) -> Option<Vec<Vec<i64>>> {
    (0..d.len())
        .map(|i| {
            reps_unchecked(game, i, d)
                .into_iter()
                .find(|r| r[i] == -1)
                .map(|r| r.iter().map(|x| x + 1).collect())
        })
        .collect()
}

/// Checks that every minimal recurrent D has a shift D' = D + k e0 for which
/// D' - 1 is extreme, all of one degree c with 2c = deg K for K = deg+ - 2,
/// and compares with the report's natural-RR flag.
pub fn natural_rr_via_sandpile(
    game: &Game,
    report: &RRReport,
    budget: u128,
) -> Result<SandpileNaturalRR> {
    let v0 = report.base;
    let minimal = minimal_recurrents(game, v0, budget)?;
    let mut details = Vec::new();
    let mut degrees = Vec::new();
    let mut criterion = true;
    for d in minimal {
        let k = last_in_sigma(game, v0, &d.iter().map(|x| x - 1).collect::<Vec<_>>());
        let mut shifted = d.clone();
        shifted[v0] += k;
        let lowered: Vec<i64> = shifted.iter().map(|x| x - 1).collect();
        let extreme = is_extreme(game, v0, &lowered)?;
        let witnesses = if extreme { positive_witnesses(game, &lowered) } else { None };
        match witnesses {
            Some(w) => {
                degrees.push(game.degree(&lowered));
                details.push(SandpileWitness { minimal: d, shifted: Some(shifted), witnesses: w });
            }
            None => {
                criterion = false;
                details.push(SandpileWitness { minimal: d, shifted: None, witnesses: Vec::new() });
            }
        }
    }
    degrees.sort();
    degrees.dedup();
    // K - (D' - 1) must land in the same degree, so 2c = deg K.
    let natural_degree = game.degree(&game.natural_canonical());
    if degrees.len() > 1 || degrees.first().is_some_and(|&c| 2 * c != natural_degree) {
        criterion = false;
    }
    let common_degree = if criterion { degrees.first().copied() } else { None };
    Ok(SandpileNaturalRR {
        criterion,
        report_natural_rr: report.natural_rr,
        agree: criterion == report.natural_rr,
        common_degree,
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Side;

    fn row(g: &crate::Digraph) -> Game {
        Game::on_digraph(g, Side::Row).unwrap()
    }

    #[test]
    fn t3_stabilization() {
        let game = row(&fixtures::t3());
        // v1 fires into v2, v2 fires into the frozen base.
        let (d, f) = stabilize(&game, 0, &[0, 1, 0], None).unwrap();
        assert_eq!(d, vec![1, 0, 0]);
        assert_eq!(f, vec![0, 1, 1]);
        assert_eq!(stabilize(&game, 0, &[3, 0, 0], None).unwrap().0, vec![3, 0, 0]);
    }

    #[test]
    fn b2_below_threshold_is_stable() {
        let game = row(&fixtures::b2());
        assert_eq!(stabilize(&game, 0, &[0, 1], None).unwrap().0, vec![0, 1]);
    }

    #[test]
    fn step_cap() {
        let game = row(&fixtures::t3());
        assert_eq!(stabilize(&game, 0, &[0, 5, 0], Some(2)), Err(Error::StepCap(2)));
    }

    #[test]
    fn recurrence() {
        let t3 = row(&fixtures::t3());
        assert!(is_recurrent(&t3, 0, &[0, 0, 0]).unwrap());
        let p3 = row(&fixtures::p3());
        assert!(is_recurrent(&p3, 0, &[0, 1, 0]).unwrap());
        assert!(!is_recurrent(&p3, 0, &[0, 0, 0]).unwrap());
        assert!(matches!(is_recurrent(&p3, 0, &[0, 2, 0]), Err(Error::NotStable(1))));
        assert!(is_recurrent_oracle(&p3, 0, &[0, 1, 0], 2).unwrap());
        assert!(!is_recurrent_oracle(&p3, 0, &[0, 0, 0], 2).unwrap());
    }

    #[test]
    fn sandpile_natural_rr_agrees() {
        for g in [fixtures::t3(), fixtures::p3(), fixtures::k4u(), fixtures::b2()] {
            let game = row(&g);
            let report = crate::riemann_roch::rr_verdict(&game, 0, 1000).unwrap();
            let verdict = natural_rr_via_sandpile(&game, &report, 1000).unwrap();
            assert!(verdict.agree, "{g:?}");
        }
        let k4 = row(&fixtures::k4u());
        let report = crate::riemann_roch::rr_verdict(&k4, 0, 1000).unwrap();
        let verdict = natural_rr_via_sandpile(&k4, &report, 1000).unwrap();
        assert!(verdict.criterion);
        assert_eq!(verdict.common_degree, Some(2));
    }

    #[test]
    fn t3_minimal_recurrent() {
        let game = row(&fixtures::t3());
        assert_eq!(minimal_recurrents(&game, 0, 100).unwrap(), vec![vec![0, 0, 0]]);
    }
}
