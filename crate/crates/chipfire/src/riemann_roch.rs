//! Uniformity, reflection invariance, canonical divisors and the
//! Riemann-Roch verdict.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::game::Game;
use crate::lattice::Lattice;
use crate::rank::{enumerate_extremes, ExtremeClassSet, Ranker};
use crate::reduction::reps_unchecked;

pub type Point = Vec<BigRational>;

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn to_point(d: &[i64]) -> Point {
    d.iter().map(|&x| rat(x)).collect()
}

/// "p/q", or "p" for integers.
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// π(p) = p - (p·w / |w|²) w.
pub fn project(w: &[i64], p: &[BigRational]) -> Point {
    let dot: BigRational = p.iter().zip(w).map(|(x, &y)| x * rat(y)).sum();
    let norm: i64 = w.iter().map(|x| x * x).sum();
    let lambda = dot / rat(norm);
    p.iter().zip(w).map(|(x, &y)| x - &lambda * rat(y)).collect()
}

/// max_i (q_i - p_i) / w_i.
pub fn delta_distance(w: &[i64], p: &[BigRational], q: &[BigRational]) -> BigRational {
    p.iter()
        .zip(q)
        .zip(w)
        .map(|((a, b), &c)| (b - a) / rat(c))
        .max()
        .expect("nonempty vectors")
}

/// π(ν + 1) for each class representative, in class order.
pub fn crit_points(extremes: &ExtremeClassSet, w: &[i64]) -> Vec<Point> {
    extremes
        .classes
        .iter()
        .map(|c| {
            let shifted: Vec<i64> = c.rep.iter().map(|x| x + 1).collect();
            project(w, &to_point(&shifted))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    /// v with -Crit = Crit + v.
    pub witness: Point,
    /// Class i is sent to class `matching[i]`.
    pub matching: Vec<usize>,
    /// ℓ_i = -p_i - v - p_σ(i), a lattice vector.
    pub offsets: Vec<Vec<i64>>,
}

fn neg_sum(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| -x - y).collect()
}

/// Tries v = -p_0 - p_j for each class j and accepts the first one for which
/// every -p_i - v is congruent to some p_k, bijectively.
pub fn reflection_invariant(crit: &[Point], lattice: &Lattice) -> Option<Reflection> {
    let first = crit.first()?;
    'candidates: for pj in crit {
        let v = neg_sum(first, pj);
        let mut matching = Vec::with_capacity(crit.len());
        let mut offsets = Vec::with_capacity(crit.len());
        let mut used = vec![false; crit.len()];
        for pi in crit {
            let target = neg_sum(pi, &v);
            let hit = crit.iter().enumerate().find_map(|(k, pk)| {
                let diff: Point = target.iter().zip(pk).map(|(a, b)| a - b).collect();
                lattice.contains_rational(&diff).then_some((k, diff))
            });
            let Some((k, diff)) = hit else { continue 'candidates };
            if used[k] {
                continue 'candidates;
            }
            used[k] = true;
            matching.push(k);
            offsets.push(diff.iter().map(|q| q.to_integer().try_into().expect("small offset")).collect());
        }
        return Some(Reflection { witness: v, matching, offsets });
    }
    None
}

#[derive(Debug, Clone)]
pub struct RRReport {
    pub base: usize,
    pub extremes: ExtremeClassSet,
    pub crit_points: Vec<Point>,
    pub uniform: bool,
    pub reflection_invariant: bool,
    pub rr_property: bool,
    pub reflection: Option<Reflection>,
    /// ν_i + φ(ν_i) of largest degree, normalised; present whenever the
    /// lattice is reflection invariant.
    pub reflection_canonical: Option<Vec<i64>>,
    /// Present exactly when the Riemann-Roch property holds.
    pub canonical: Option<Vec<i64>>,
    pub natural_rr: bool,
    pub g: Option<i64>,
}

/// Lexicographically least v0-reduced representative of the class of `d`.
pub fn normalize_class(game: &Game, v0: usize, d: &[i64]) -> Vec<i64> {
    reps_unchecked(game, v0, d).into_iter().next().expect("at least one representative")
}

pub fn rr_verdict(game: &Game, v0: usize, budget: u128) -> Result<RRReport> {
    let extremes = enumerate_extremes(game, v0, budget)?;
    Ok(verdict_from_extremes(game, extremes))
}

pub fn verdict_from_extremes(game: &Game, extremes: ExtremeClassSet) -> RRReport {
    let v0 = extremes.base;
    let crit = crit_points(&extremes, game.weight());
    let reflection = reflection_invariant(&crit, game.lattice());
    let uniform = extremes.is_uniform();
    let reflection_canonical = reflection.as_ref().map(|refl| {
        let best = (0..extremes.classes.len())
            .map(|i| {
                let a = &extremes.classes[i].rep;
                let b = &extremes.classes[refl.matching[i]].rep;
                let k: Vec<i64> =
                    a.iter().zip(b).zip(&refl.offsets[i]).map(|((x, y), l)| x + y + l).collect();
                (game.degree(&k), std::cmp::Reverse(i), k)
            })
            .max()
            .expect("at least one class")
            .2;
        normalize_class(game, v0, &best)
    });
    let rr_property = uniform && reflection.is_some();
    let canonical = if rr_property { reflection_canonical.clone() } else { None };
    let natural_rr = canonical
        .as_ref()
        .is_some_and(|k| game.equivalent(k, &game.natural_canonical()));
    RRReport {
        base: v0,
        g: rr_property.then_some(extremes.g_min),
        crit_points: crit,
        uniform,
        reflection_invariant: reflection.is_some(),
        rr_property,
        reflection,
        reflection_canonical,
        canonical,
        natural_rr,
        extremes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    /// False when there is no canonical divisor to check against.
    pub applicable: bool,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<Vec<i64>>,
}

impl FormulaCheck {
    fn not_applicable() -> Self {
        FormulaCheck { applicable: false, checked: 0, failures: 0, first_failure: None }
    }

    pub fn passed(&self) -> bool {
        self.applicable && self.failures == 0
    }
}

/// All integer vectors with entries in [-radius, radius].
pub fn box_points(n: usize, radius: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * radius + 1) as u64;
    let total = side.pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut d = vec![0i64; n];
        for x in d.iter_mut().rev() {
            *x = (idx % side) as i64 - radius;
            idx /= side;
        }
        d
    })
}

fn check_box<F>(game: &Game, v0: usize, k: &[i64], sample_box: i64, mut ok: F) -> FormulaCheck
where
    F: FnMut(i64, i64) -> bool,
{
    let mut ranker = Ranker::new(game, v0).expect("base checked by the report");
    let mut out = FormulaCheck { applicable: true, checked: 0, failures: 0, first_failure: None };
    for d in box_points(game.vertex_count(), sample_box) {
        let dual: Vec<i64> = k.iter().zip(&d).map(|(a, b)| a - b).collect();
        let lhs = ranker.rank_unchecked(&d) - ranker.rank_unchecked(&dual);
        out.checked += 1;
        if !ok(lhs, game.degree(&d)) {
            out.failures += 1;
            if out.first_failure.is_none() {
                out.first_failure = Some(d);
            }
        }
    }
    out
}

/// r(D) - r(K - D) = deg(D) - g + 1 on the box; not applicable when the
/// report has no canonical divisor.
pub fn rr_formula_check(game: &Game, report: &RRReport, sample_box: i64) -> FormulaCheck {
    let (Some(k), Some(g)) = (&report.canonical, report.g) else {
        return FormulaCheck::not_applicable();
    };
    check_box(game, report.base, k, sample_box, |lhs, deg| lhs == deg - g + 1)
}

/// deg(D) - 3 g_max + 2 g_min + 1 <= r(D) - r(K - D) <= deg(D) - g_min + 1.
pub fn canonical_inequality_check(game: &Game, report: &RRReport, sample_box: i64) -> FormulaCheck {
    let Some(k) = &report.reflection_canonical else {
        return FormulaCheck::not_applicable();
    };
    let (lo, hi) = (report.extremes.g_min, report.extremes.g_max);
    check_box(game, report.base, k, sample_box, |lhs, deg| {
        deg - 3 * hi + 2 * lo < lhs && lhs <= deg - lo + 1
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingBridge {
    pub original_rr: bool,
    pub scaled_rr: bool,
    pub agree: bool,
    /// When both sides have the property: whether diag(W)(K + 2) - 2 is
    /// equivalent to the canonical divisor of the scaled lattice.
    pub canonical_transport: Option<bool>,
}

pub fn scaling_bridge(game: &Game, v0: usize, budget: u128) -> Result<ScalingBridge> {
    let original = rr_verdict(game, v0, budget)?;
    let scaled_game = game.scaled();
    let scaled = rr_verdict(&scaled_game, v0, budget)?;
    let canonical_transport = match (&original.canonical, &scaled.canonical) {
        (Some(k), Some(k2)) => {
            let image: Vec<i64> =
                k.iter().zip(game.weight()).map(|(x, w)| w * (x + 2) - 2).collect();
            Some(scaled_game.equivalent(&image, k2))
        }
        _ => None,
    };
    Ok(ScalingBridge {
        original_rr: original.rr_property,
        scaled_rr: scaled.rr_property,
        agree: original.rr_property == scaled.rr_property,
        canonical_transport,
    })
}

/// Every crit point lies on the hyperplane orthogonal to `w`.
pub fn on_hyperplane(w: &[i64], p: &[BigRational]) -> bool {
    p.iter().zip(w).map(|(x, &y)| x * rat(y)).sum::<BigRational>().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Side;
    use crate::rank::DEFAULT_BUDGET;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn frac(v: &[i64], d: i64) -> Point {
        v.iter().map(|&x| q(x, d)).collect()
    }

    #[test]
    fn projections() {
        let w = [1, 2, 1, 2, 1, 2];
        let p = project(&w, &to_point(&[0, 1, 2, 2, 2, 1]));
        assert_eq!(p, frac(&[-4, -3, 6, 2, 6, -3], 5));
        assert_eq!(project(&[1, 1, 1], &to_point(&[1, 1, 1])), to_point(&[0, 0, 0]));
        assert_eq!(project(&w, &p), p);
    }

    #[test]
    fn gauge() {
        assert_eq!(delta_distance(&[1, 1, 1], &to_point(&[0, 0, 0]), &to_point(&[2, -1, -1])), q(2, 1));
        assert_eq!(delta_distance(&[2, 1], &to_point(&[0, 0]), &to_point(&[1, -2])), q(1, 2));
        let p = to_point(&[3, -3]);
        assert!(delta_distance(&[2, 1], &p, &p).is_zero());
    }

    #[test]
    fn ex_a_report() {
        let game = fixtures::ex_a().chip_game();
        let report = rr_verdict(&game, 0, DEFAULT_BUDGET).unwrap();
        assert!(!report.uniform);
        assert!(!report.reflection_invariant);
        assert!(!report.rr_property);
        let mut crit = report.crit_points.clone();
        crit.sort();
        let mut expected = vec![
            frac(&[-4, -3, 6, 2, 6, -3], 5),
            frac(&[-11, -7, 19, -7, 34, -7], 15),
            frac(&[-11, -7, 34, -7, 19, -7], 15),
        ];
        expected.sort();
        assert_eq!(crit, expected);
    }

    #[test]
    fn k4u_report() {
        let game = Game::on_digraph(&fixtures::k4u(), Side::Row).unwrap();
        let report = rr_verdict(&game, 0, DEFAULT_BUDGET).unwrap();
        assert!(report.rr_property);
        assert_eq!(report.g, Some(3));
        let k = report.canonical.clone().unwrap();
        assert!(game.equivalent(&k, &[1, 1, 1, 1]));
        assert!(report.natural_rr);
        assert!(rr_formula_check(&game, &report, 1).passed());
    }

    #[test]
    fn ex_c_reflection() {
        let game = fixtures::ex_c().chip_game();
        let report = rr_verdict(&game, 0, DEFAULT_BUDGET).unwrap();
        assert!(!report.uniform);
        assert!(report.reflection_invariant);
        let refl = report.reflection.clone().unwrap();
        let expected = neg_sum(&report.crit_points[0], &report.crit_points[1]);
        assert_eq!(refl.witness, expected);
        assert!(canonical_inequality_check(&game, &report, 1).passed());
    }

    #[test]
    fn ec2_bridge() {
        let game = fixtures::ec(2).chip_game();
        let bridge = scaling_bridge(&game, 0, DEFAULT_BUDGET).unwrap();
        assert!(bridge.agree && bridge.original_rr);
        assert_eq!(bridge.canonical_transport, Some(true));
    }
}
