//! The clique/independent-set counting engine: evaluates the characteristic
//! polynomial of ST_{n,k} and CT_{n,k} at odd sample points by splitting the
//! admissible tuples into cases around the two forced-singleton cliques, then
//! interpolates the exact polynomial and attaches the region count.
//!
//! The case sums here run from q = 0 and carry explicit zero-vertex boundary
//! terms; the literal sums starting at q = 1 drop the empty-independent-set
//! contribution that matters once all coordinates are consumed by clique or
//! zero picks, and then fail to match the enumeration oracle at small n.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, interpolate, stirling2, IntPolynomial};
use crate::model::{ArrangementSpec, Family, ReducedFamily, SumGraph};

/// One bipartite case graph, after clique picks have been fixed.
///
/// Upper-partition values are chosen from `lower..=upper`; the opposite
/// partition holds the vertices -x for x in `second_lo..=second_hi`; i and -x
/// share an edge iff i - x lies in `adj_lo..=adj_hi` ({0..k} for ST graphs,
/// {1..k} for CT graphs). Empty ranges (lower = upper + 1) are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlicePlan {
    pub lower: i64,
    pub upper: i64,
    pub second_lo: i64,
    pub second_hi: i64,
    pub adj_lo: i64,
    pub adj_hi: i64,
}

impl SlicePlan {
    pub fn second_size(&self) -> i64 {
        (self.second_hi - self.second_lo + 1).max(0)
    }

    /// Vertices of -x's partition blocked by choosing i, that are not already
    /// blocked by the previous (smaller) choice. The blocked window of a
    /// single choice i is x in [i - adj_hi, i - adj_lo]; the windows have
    /// equal length and slide right with i, so only the immediately
    /// preceding choice can overlap.
    fn blocked_increment(&self, prev: Option<i64>, i: i64) -> i64 {
        let mut lo = (i - self.adj_hi).max(self.second_lo);
        if let Some(p) = prev {
            lo = lo.max(p - self.adj_lo + 1);
        }
        let hi = (i - self.adj_lo).min(self.second_hi);
        (hi - lo + 1).max(0)
    }
}

/// Exact histogram of the slack statistic g over all increasing l-tuples in
/// the plan's upper partition: g counts the opposite-partition vertices that
/// are independent of every chosen vertex.
#[derive(Debug, Clone)]
pub struct ExcessDistribution {
    pub l: u32,
    pub counts: BTreeMap<i64, BigInt>,
}

impl ExcessDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }
}

/// Computes the g-histogram by dynamic programming over (last choice,
/// accumulated blocked count) rather than tuple enumeration, so evaluation
/// stays polynomial in the window size.
pub fn excess_distribution(plan: &SlicePlan, l: u32) -> ExcessDistribution {
    let size2 = plan.second_size();
    let mut counts = BTreeMap::new();
    if l == 0 {
        counts.insert(size2, BigInt::one());
        return ExcessDistribution { l, counts };
    }
    // layer: (last chosen value, blocked so far) -> tuple count
    let mut layer: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
    for i in plan.lower..=plan.upper {
        let b = plan.blocked_increment(None, i);
        *layer.entry((i, b)).or_insert_with(BigInt::zero) += 1;
    }
    for _ in 1..l {
        let mut next: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for ((prev, blocked), cnt) in &layer {
            for i in (prev + 1)..=plan.upper {
                let b = blocked + plan.blocked_increment(Some(*prev), i);
                *next.entry((i, b)).or_insert_with(BigInt::zero) += cnt;
            }
        }
        layer = next;
    }
    for ((_, blocked), cnt) in layer {
        *counts.entry(size2 - blocked).or_insert_with(BigInt::zero) += cnt;
    }
    ExcessDistribution { l, counts }
}

/// Number of independent sets of size q in the plan's bipartite graph:
/// sum over l chosen upper vertices of C(g, q - l) compatible lower picks.
pub fn count_independent_sets(plan: &SlicePlan, q: u32) -> BigInt {
    let mut total = BigInt::zero();
    let width = (plan.upper - plan.lower + 1).max(0) as u32;
    for l in 0..=q.min(width) {
        let dist = excess_distribution(plan, l);
        for (g, cnt) in &dist.counts {
            total += cnt * binomial(*g, (q - l) as i64);
        }
    }
    total
}

/// Zero-pick contributions present only in the CT breakdown.
#[derive(Debug, Clone)]
pub struct ZeroCases {
    /// Tuples with at least one zero and no clique pick.
    pub base: BigInt,
    /// Per second-clique pick, tuples with at least one zero.
    pub with_second_clique: Vec<BigInt>,
}

/// Per-case counts at one evaluation point; `total` is the value of the
/// characteristic polynomial at t.
#[derive(Debug, Clone)]
pub struct CaseBreakdown {
    pub t: u64,
    pub family: Family,
    /// Tuples avoiding both cliques (and the zero vertex, for CT).
    pub base: BigInt,
    /// One entry per pick from the first clique.
    pub first_clique: Vec<BigInt>,
    /// One entry per pick from the second clique.
    pub second_clique: Vec<BigInt>,
    /// pairs[i][j]: picks i from the first clique and j from the second.
    pub pairs: Vec<Vec<BigInt>>,
    pub zero_cases: Option<ZeroCases>,
    pub total: BigInt,
}

impl CaseBreakdown {
    /// Checks that every part is nonnegative and that the parts add to total.
    pub fn validate(&self) -> Result<()> {
        let mut sum = self.base.clone();
        let mut nonneg = !self.base.is_negative();
        for v in self.first_clique.iter().chain(&self.second_clique) {
            nonneg &= !v.is_negative();
            sum += v;
        }
        for row in &self.pairs {
            for v in row {
                nonneg &= !v.is_negative();
                sum += v;
            }
        }
        if let Some(z) = &self.zero_cases {
            nonneg &= !z.base.is_negative();
            sum += &z.base;
            for v in &z.with_second_clique {
                nonneg &= !v.is_negative();
                sum += v;
            }
        }
        if !nonneg {
            return Err(Error::SanityCheckFailed(format!(
                "negative case part at t = {}",
                self.t
            )));
        }
        if sum != self.total {
            return Err(Error::SanityCheckFailed(format!(
                "case parts sum to {} but total is {} at t = {}",
                sum, self.total, self.t
            )));
        }
        Ok(())
    }
}

/// Smallest valid odd evaluation point for the engine at (n, k_eff).
pub fn validity_bound(n: u32, k_eff: u32) -> u64 {
    2 * (n as u64 + 2) * (k_eff as u64 + 2) + 1
}

/// n + 2 consecutive odd sample points starting at the validity bound;
/// n + 1 determine the polynomial, the last is the holdout check.
pub fn sample_points(n: u32, k_eff: u32) -> Vec<u64> {
    let t0 = validity_bound(n, k_eff);
    (0..=n as u64 + 1).map(|i| t0 + 2 * i).collect()
}

/// Minimum odd t at which the case split is structurally sound: r >= k + 2
/// keeps the cliques disjoint and every slice window well-formed. The
/// interpolation grid starts at the far more conservative `validity_bound`
/// and certifies itself through the holdout point.
pub fn structural_bound(k_eff: u32) -> u64 {
    2 * k_eff as u64 + 5
}

fn check_sample_point(k_eff: u32, t: u64) -> Result<()> {
    if t % 2 == 0 {
        return Err(Error::InvalidSamplePoint {
            t,
            reason: "evaluation point must be odd".into(),
        });
    }
    let min = structural_bound(k_eff);
    if t < min {
        return Err(Error::InvalidSamplePoint {
            t,
            reason: format!("below the structural bound {min} for k={k_eff}"),
        });
    }
    Ok(())
}

/// Inner weighted sum over independent-set sizes; the q = 0 term contributes
/// S(0,0) * 0! = 1 exactly when `free` coordinates is zero.
fn surjection_sum(plan: &SlicePlan, free: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for q in 0..=free {
        let i_q = count_independent_sets(plan, q);
        if i_q.is_zero() {
            continue;
        }
        acc += i_q * stirling2(free, q) * factorial(q);
    }
    acc
}

/// Evaluates chi_{ST_{n,k}}(t) by the four-case clique split.
pub fn case_counts_st(n: u32, k: u32, t: u64) -> Result<CaseBreakdown> {
    check_sample_point(k, t)?;
    let family = ReducedFamily {
        family: Family::St,
        n,
        k_eff: k,
    };
    let graph = SumGraph::for_family(&family, t)?;
    let r = graph.radius();
    let ki = k as i64;
    let c1 = ki / 2; // C1 = {0..c1}
    let c2 = (ki + 1) / 2; // C2 = {-r..-r+c2-1}
    let plan = |lower: i64, upper: i64, x_lo: i64, x_hi: i64| SlicePlan {
        lower,
        upper,
        second_lo: x_lo,
        second_hi: x_hi,
        adj_lo: 0,
        adj_hi: ki,
    };
    let n_big = BigInt::from(n);
    let n_pairs_factor = BigInt::from(n) * BigInt::from(n as i64 - 1);

    let base = surjection_sum(&plan(c1 + 1, r, 1, r - c2), n);

    let mut first_clique = Vec::new();
    for p in 0..=c1 {
        let inner = surjection_sum(&plan(ki - p + 1, r, p + 1, r - c2), n - 1);
        first_clique.push(&n_big * inner);
    }

    let mut second_clique = Vec::new();
    for p2 in 0..c2 {
        let inner = surjection_sum(&plan(c1 + 1, r - p2 - 1, 1, r - ki + p2), n - 1);
        second_clique.push(&n_big * inner);
    }

    let mut pairs = Vec::new();
    for p1 in 0..=c1 {
        let mut row = Vec::new();
        for p2 in 0..c2 {
            // the bound keeps the clique picks non-adjacent; check anyway
            if graph.is_edge(p1, -r + p2) || n < 2 {
                row.push(BigInt::zero());
                continue;
            }
            let inner = surjection_sum(&plan(ki - p1 + 1, r - p2 - 1, p1 + 1, r - ki + p2), n - 2);
            row.push(&n_pairs_factor * inner);
        }
        pairs.push(row);
    }

    let mut total = base.clone();
    total += first_clique.iter().sum::<BigInt>();
    total += second_clique.iter().sum::<BigInt>();
    total += pairs.iter().flatten().sum::<BigInt>();

    Ok(CaseBreakdown {
        t,
        family: Family::St,
        base,
        first_clique,
        second_clique,
        pairs,
        zero_cases: None,
        total,
    })
}

/// Evaluates chi_{CT_{n,k}}(t) by the six-case split: the zero vertex has no
/// self-loop, so any number of coordinates may sit on it, handled by the
/// binomial h(l) sums. Coordinates off the zero picks must also avoid the
/// neighbors {1..k} of zero, which shrinks the zero-case graphs accordingly.
pub fn case_counts_ct(n: u32, k: u32, t: u64) -> Result<CaseBreakdown> {
    check_sample_point(k, t)?;
    if k == 0 {
        // empty arrangement: every tuple is admissible
        let total = num_traits::pow(BigInt::from(t), n as usize);
        return Ok(CaseBreakdown {
            t,
            family: Family::Ct,
            base: total.clone(),
            first_clique: vec![],
            second_clique: vec![],
            pairs: vec![],
            zero_cases: None,
            total,
        });
    }
    let family = ReducedFamily {
        family: Family::Ct,
        n,
        k_eff: k,
    };
    let graph = SumGraph::for_family(&family, t)?;
    let r = graph.radius();
    let ki = k as i64;
    let c1 = ki / 2; // C1' = {1..c1}
    let c2 = (ki + 1) / 2; // C2' = {-r..-r+c2-1}
    let plan = |lower: i64, upper: i64, x_lo: i64, x_hi: i64| SlicePlan {
        lower,
        upper,
        second_lo: x_lo,
        second_hi: x_hi,
        adj_lo: 1,
        adj_hi: ki,
    };
    let n_big = BigInt::from(n);
    let n_pairs_factor = BigInt::from(n) * BigInt::from(n as i64 - 1);

    // case 1: no clique pick, no zero
    let base = surjection_sum(&plan(c1 + 1, r, 1, r - c2), n);

    // case 2: no clique pick, at least one zero; the nonzero coordinates
    // must avoid zero's neighbors {1..k} as well
    let zero_base = {
        let p = plan(ki + 1, r, 1, r - c2);
        let mut acc = BigInt::zero();
        for l in 1..=n {
            acc += binomial(n as i64, l as i64) * surjection_sum(&p, n - l);
        }
        acc
    };

    // case 3: one pick p from C1', no zero
    let mut first_clique = Vec::new();
    for p in 1..=c1 {
        let inner = surjection_sum(&plan(ki - p + 1, r, p, r - c2), n - 1);
        first_clique.push(&n_big * inner);
    }

    // case 4: one pick -r+p2 from C2', no zero
    let mut second_clique = Vec::new();
    for p2 in 0..c2 {
        let inner = surjection_sum(&plan(c1 + 1, r - p2, 1, r - ki + p2), n - 1);
        second_clique.push(&n_big * inner);
    }

    // case 5: one pick from C2' and at least one zero
    let mut zero_second = Vec::new();
    for p2 in 0..c2 {
        let p = plan(ki + 1, r - p2, 1, r - ki + p2);
        let mut acc = BigInt::zero();
        for l in 1..n {
            // one position holds the clique pick, l of the rest hold zeros
            acc += &n_big * binomial(n as i64 - 1, l as i64) * surjection_sum(&p, n - 1 - l);
        }
        zero_second.push(acc);
    }

    // case 6: picks from both cliques, no zero
    let mut pairs = Vec::new();
    for p1 in 1..=c1 {
        let mut row = Vec::new();
        for p2 in 0..c2 {
            if graph.is_edge(p1, -r + p2) || n < 2 {
                row.push(BigInt::zero());
                continue;
            }
            let inner = surjection_sum(&plan(ki - p1 + 1, r - p2, p1, r - ki + p2), n - 2);
            row.push(&n_pairs_factor * inner);
        }
        pairs.push(row);
    }

    let mut total = base.clone();
    total += &zero_base;
    total += first_clique.iter().sum::<BigInt>();
    total += second_clique.iter().sum::<BigInt>();
    total += zero_second.iter().sum::<BigInt>();
    total += pairs.iter().flatten().sum::<BigInt>();

    Ok(CaseBreakdown {
        t,
        family: Family::Ct,
        base,
        first_clique,
        second_clique,
        pairs,
        zero_cases: Some(ZeroCases {
            base: zero_base,
            with_second_clique: zero_second,
        }),
        total,
    })
}

/// Evaluates the reduced family at one odd sample point.
pub fn evaluate(family: &ReducedFamily, t: u64) -> Result<CaseBreakdown> {
    match family.family {
        Family::St => case_counts_st(family.n, family.k_eff, t),
        Family::Ct => case_counts_ct(family.n, family.k_eff, t),
    }
}

/// The interpolated characteristic polynomial with its evidence.
#[derive(Debug, Clone)]
pub struct CharPolyResult {
    pub spec: ArrangementSpec,
    pub reduced: ReducedFamily,
    pub poly: IntPolynomial,
    pub samples: Vec<(u64, BigInt)>,
    pub regions: BigInt,
}

/// Zaslavsky's region count |chi(-1)| for a degree-n polynomial.
pub fn regions(poly: &IntPolynomial, n: u32) -> Result<BigInt> {
    assert_eq!(poly.degree(), n as i64, "regions needs a degree-n polynomial");
    let v = poly.eval(&BigInt::from(-1));
    let signed = if n % 2 == 0 { v.clone() } else { -v.clone() };
    if signed.is_negative() {
        return Err(Error::NegativeRegionCount(signed.to_string()));
    }
    Ok(signed)
}

/// Computes the exact characteristic polynomial of T_{n,k,l}: reduce, sample
/// at n + 2 odd points, interpolate on the first n + 1, then certify the
/// holdout point and the structural coefficient invariants.
pub fn characteristic_polynomial(spec: &ArrangementSpec) -> Result<CharPolyResult> {
    let reduced = spec.reduce();
    let n = spec.n;
    let points = sample_points(n, reduced.k_eff);
    let mut samples = Vec::with_capacity(points.len());
    for &t in &points {
        let breakdown = evaluate(&reduced, t)?;
        breakdown.validate()?;
        samples.push((t, breakdown.total));
    }
    let fit: Vec<(BigInt, BigInt)> = samples[..=n as usize]
        .iter()
        .map(|(t, v)| (BigInt::from(*t), v.clone()))
        .collect();
    let poly = interpolate(&fit)?;
    let (holdout_t, holdout_v) = &samples[n as usize + 1];
    let predicted = poly.eval(&BigInt::from(*holdout_t));
    if &predicted != holdout_v {
        return Err(Error::HoldoutMismatch {
            t: *holdout_t,
            got: predicted.to_string(),
            expected: holdout_v.to_string(),
        });
    }
    check_charpoly_invariants(spec, &poly)?;
    let regions = regions(&poly, n)?;
    Ok(CharPolyResult {
        spec: *spec,
        reduced,
        poly,
        samples,
        regions,
    })
}

/// Monicity, degree, the forced t^{n-1} coefficient, and sign alternation.
pub fn check_charpoly_invariants(spec: &ArrangementSpec, poly: &IntPolynomial) -> Result<()> {
    let n = spec.n as usize;
    if poly.degree() != n as i64 {
        return Err(Error::SanityCheckFailed(format!(
            "degree {} instead of {n}",
            poly.degree()
        )));
    }
    if !poly.coeff(n).is_one() {
        return Err(Error::SanityCheckFailed("polynomial is not monic".into()));
    }
    if n >= 1 && poly.coeff(n - 1) != -spec.hyperplane_count() {
        return Err(Error::SanityCheckFailed(format!(
            "coefficient of t^{} is {}, expected {}",
            n - 1,
            poly.coeff(n - 1),
            -spec.hyperplane_count()
        )));
    }
    for i in 0..=n {
        let c = poly.coeff(n - i);
        let signed = if i % 2 == 0 { c.clone() } else { -c };
        if signed.is_negative() {
            return Err(Error::SanityCheckFailed(format!(
                "sign alternation fails at t^{}",
                n - i
            )));
        }
    }
    Ok(())
}
