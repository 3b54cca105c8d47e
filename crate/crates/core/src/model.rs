//! Arrangement specifications, the parity reduction onto the ST/CT families,
//! the sum graph over Z_m, and two independent brute-force oracles.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, falling, stirling2};

/// Default work bound for the enumeration oracle, in candidate prefixes.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "ST")]
    St,
    #[serde(rename = "CT")]
    Ct,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::St => f.write_str("ST"),
            Family::Ct => f.write_str("CT"),
        }
    }
}

/// The triple (n, k, l) defining the arrangement x_i + x_j = -l..k for i < j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub n: u32,
    pub k: u32,
    pub l: u32,
}

impl ArrangementSpec {
    pub fn new(n: u32, k: u32, l: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        Ok(ArrangementSpec { n, k, l })
    }

    /// Number of defining hyperplanes, C(n,2) * (k + l + 1).
    pub fn hyperplane_count(&self) -> BigInt {
        binomial(self.n as i64, 2) * BigInt::from(self.k as i64 + self.l as i64 + 1)
    }

    /// Parity reduction: the characteristic polynomial of (n, k, l) equals
    /// that of ST_{n,k+l} when l is even and CT_{n,k+l+1} when l is odd.
    pub fn reduce(&self) -> ReducedFamily {
        if self.l % 2 == 0 {
            ReducedFamily {
                family: Family::St,
                n: self.n,
                k_eff: self.k + self.l,
            }
        } else {
            ReducedFamily {
                family: Family::Ct,
                n: self.n,
                k_eff: self.k + self.l + 1,
            }
        }
    }

    /// Forbidden pair sums -l..k as given, before reduction.
    pub fn forbidden_sums(&self) -> Vec<i64> {
        (-(self.l as i64)..=self.k as i64).collect()
    }
}

/// An ST or CT family member after the parity reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedFamily {
    pub family: Family,
    pub n: u32,
    pub k_eff: u32,
}

impl ReducedFamily {
    /// Forbidden pair sums: {0..k_eff} for ST, {1..k_eff} for CT.
    pub fn forbidden_sums(&self) -> Vec<i64> {
        match self.family {
            Family::St => (0..=self.k_eff as i64).collect(),
            Family::Ct => (1..=self.k_eff as i64).collect(),
        }
    }
}

/// The graph over Z_m (m odd) with an edge u ~ v iff u + v mod m lies in a
/// forbidden residue set. Vertices are the signed residues -r..r, m = 2r + 1.
/// A vertex v carries a self-loop iff 2v mod m is forbidden.
#[derive(Debug, Clone)]
pub struct SumGraph {
    m: u64,
    r: i64,
    forbidden: Vec<bool>, // indexed by canonical residue 0..m-1
}

impl SumGraph {
    pub fn new(m: u64, forbidden_residues: &[i64]) -> Result<Self> {
        if m < 3 || m % 2 == 0 {
            return Err(Error::InvalidSpec(format!(
                "sum graph modulus must be odd and at least 3, got {m}"
            )));
        }
        let mut forbidden = vec![false; m as usize];
        for &c in forbidden_residues {
            forbidden[c.rem_euclid(m as i64) as usize] = true;
        }
        Ok(SumGraph {
            m,
            r: ((m - 1) / 2) as i64,
            forbidden,
        })
    }

    pub fn for_family(family: &ReducedFamily, m: u64) -> Result<Self> {
        Self::new(m, &family.forbidden_sums())
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn radius(&self) -> i64 {
        self.r
    }

    pub fn is_edge(&self, u: i64, v: i64) -> bool {
        debug_assert!(u.abs() <= self.r && v.abs() <= self.r);
        let s = (u + v).rem_euclid(self.m as i64) as usize;
        self.forbidden[s]
    }

    pub fn has_self_loop(&self, v: i64) -> bool {
        self.is_edge(v, v)
    }

    pub fn is_forbidden_sum(&self, s: i64) -> bool {
        self.forbidden[s.rem_euclid(self.m as i64) as usize]
    }

    /// Vertices in the fixed enumeration order -r..r.
    pub fn vertices(&self) -> impl Iterator<Item = i64> {
        -self.r..=self.r
    }
}

/// Streams every independent set of size at most `max_size`, the empty set
/// included. Members must be pairwise non-adjacent; a self-loop does not
/// disqualify its vertex from membership.
pub fn enum_independent_sets(g: &SumGraph, max_size: usize) -> IndependentSets<'_> {
    IndependentSets {
        g,
        order: g.vertices().collect(),
        chosen: Vec::new(),
        cursor: 0,
        max_size,
        started: false,
        done: false,
    }
}

pub struct IndependentSets<'a> {
    g: &'a SumGraph,
    order: Vec<i64>,
    chosen: Vec<usize>,
    cursor: usize,
    max_size: usize,
    started: bool,
    done: bool,
}

impl<'a> Iterator for IndependentSets<'a> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        loop {
            if self.chosen.len() < self.max_size && self.cursor < self.order.len() {
                let i = self.cursor;
                self.cursor += 1;
                let v = self.order[i];
                let compatible = self
                    .chosen
                    .iter()
                    .all(|&j| !self.g.is_edge(self.order[j], v));
                if compatible {
                    self.chosen.push(i);
                    self.cursor = i + 1;
                    return Some(self.chosen.iter().map(|&j| self.order[j]).collect());
                }
            } else {
                match self.chosen.pop() {
                    Some(i) => self.cursor = i + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Second oracle: counts admissible n-tuples over Z_m by summing, over every
/// independent set S of size q <= n with s self-loop vertices, the number of
/// functions [n] -> S that are surjective and hit each self-loop vertex
/// exactly once: (n)_s * S(n-s, q-s) * (q-s)!.
pub fn count_tuples_via_independent_sets(g: &SumGraph, n: u32) -> BigInt {
    let n_big = BigInt::from(n);
    let mut total = BigInt::zero();
    for set in enum_independent_sets(g, n as usize) {
        let q = set.len() as u32;
        let s = set.iter().filter(|&&v| g.has_self_loop(v)).count() as u32;
        if s > n {
            continue;
        }
        let w = falling(&n_big, s) * stirling2(n - s, q - s) * factorial(q - s);
        total += w;
    }
    total
}

/// First oracle: counts tuples in (Z_t)^n with x_i + x_j mod t outside the
/// forbidden set for all i < j, by depth-first enumeration with prefix
/// pruning. `budget` bounds the number of candidate prefixes examined.
pub fn count_admissible_tuples(
    n: u32,
    t: u64,
    forbidden_sums: &[i64],
    budget: u64,
) -> Result<BigInt> {
    assert!(t >= 1);
    let tu = t as usize;
    let mut forbidden = vec![false; tu];
    for &c in forbidden_sums {
        forbidden[c.rem_euclid(t as i64) as usize] = true;
    }
    let forb_list: Vec<u64> = (0..t).filter(|&v| forbidden[v as usize]).collect();
    // blocked[v] = number of prefix entries y with v + y forbidden
    let mut blocked = vec![0u32; tu];
    let mut spent = 0u64;
    let mut count = BigInt::zero();
    dfs(
        n, t, &forb_list, &mut blocked, &mut spent, budget, &mut count,
    )?;
    return Ok(count);

    fn dfs(
        depth: u32,
        t: u64,
        forb_list: &[u64],
        blocked: &mut [u32],
        spent: &mut u64,
        budget: u64,
        count: &mut BigInt,
    ) -> Result<()> {
        *spent += t;
        if *spent > budget {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        if depth == 1 {
            let admissible = blocked.iter().filter(|&&b| b == 0).count();
            *count += BigInt::from(admissible);
            return Ok(());
        }
        for v in 0..t {
            if blocked[v as usize] != 0 {
                continue;
            }
            for &f in forb_list {
                let w = (f + t - v) % t;
                blocked[w as usize] += 1;
            }
            dfs(depth - 1, t, forb_list, blocked, spent, budget, count)?;
            for &f in forb_list {
                let w = (f + t - v) % t;
                blocked[w as usize] -= 1;
            }
        }
        Ok(())
    }
}

/// Counts admissible tuples for a reduced family at odd modulus t.
pub fn brute_count_tuples(family: &ReducedFamily, t: u64, budget: u64) -> Result<BigInt> {
    if t < 3 || t % 2 == 0 {
        return Err(Error::InvalidSpec(format!("modulus must be odd and >= 3, got {t}")));
    }
    count_admissible_tuples(family.n, t, &family.forbidden_sums(), budget)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `count` odd primes at or above `start`.
pub fn odd_primes_from(start: u64, count: usize) -> Vec<u64> {
    let mut t = if start % 2 == 0 { start + 1 } else { start };
    if t < 3 {
        t = 3;
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if is_prime(t) {
            out.push(t);
        }
        t += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_requires_positive_n() {
        assert!(ArrangementSpec::new(0, 1, 0).is_err());
        assert!(ArrangementSpec::new(1, 0, 0).is_ok());
    }

    #[test]
    fn hyperplane_counts() {
        let spec = ArrangementSpec::new(3, 1, 0).unwrap();
        assert_eq!(spec.hyperplane_count(), BigInt::from(6));
        let spec = ArrangementSpec::new(4, 2, 3).unwrap();
        assert_eq!(spec.hyperplane_count(), BigInt::from(36));
    }

    #[test]
    fn parity_reduction() {
        let even = ArrangementSpec::new(3, 1, 2).unwrap().reduce();
        assert_eq!(even.family, Family::St);
        assert_eq!(even.k_eff, 3);
        let odd = ArrangementSpec::new(3, 1, 1).unwrap().reduce();
        assert_eq!(odd.family, Family::Ct);
        assert_eq!(odd.k_eff, 3);
        let st = ArrangementSpec::new(2, 1, 0).unwrap().reduce();
        assert_eq!((st.family, st.k_eff), (Family::St, 1));
    }

    #[test]
    fn forbidden_sum_sets() {
        let spec = ArrangementSpec::new(2, 1, 2).unwrap();
        assert_eq!(spec.forbidden_sums(), vec![-2, -1, 0, 1]);
        let st = ReducedFamily { family: Family::St, n: 2, k_eff: 2 };
        assert_eq!(st.forbidden_sums(), vec![0, 1, 2]);
        let ct = ReducedFamily { family: Family::Ct, n: 2, k_eff: 2 };
        assert_eq!(ct.forbidden_sums(), vec![1, 2]);
        let ct0 = ReducedFamily { family: Family::Ct, n: 2, k_eff: 0 };
        assert!(ct0.forbidden_sums().is_empty());
    }

    #[test]
    fn sum_graph_rejects_bad_modulus() {
        assert!(SumGraph::new(2, &[0]).is_err());
        assert!(SumGraph::new(10, &[0]).is_err());
        assert!(SumGraph::new(11, &[0]).is_ok());
    }

    #[test]
    fn sum_graph_edges_and_loops() {
        // ST with k = 2 at m = 11: forbidden sums {0, 1, 2}, r = 5
        let g = SumGraph::new(11, &[0, 1, 2]).unwrap();
        assert_eq!(g.modulus(), 11);
        assert_eq!(g.radius(), 5);
        assert!(g.is_edge(3, -3)); // sum 0
        assert!(g.is_edge(3, -1)); // sum 2
        assert!(!g.is_edge(3, 4)); // sum 7
        assert!(g.is_edge(5, -4)); // sum 1
        let loops: Vec<i64> = g.vertices().filter(|&v| g.has_self_loop(v)).collect();
        // {0..k/2} and {-r..-r+k/2-1}: doubling -5 gives -10 = 1 mod 11
        assert_eq!(loops, vec![-5, 0, 1]);
        assert!(g.is_forbidden_sum(-9)); // -9 = 2 mod 11
        assert!(!g.is_forbidden_sum(3));
    }

    #[test]
    fn independent_set_stream_is_exhaustive() {
        let g = SumGraph::new(7, &[0, 1]).unwrap();
        let sets: Vec<Vec<i64>> = enum_independent_sets(&g, 3).collect();
        assert_eq!(sets[0], Vec::<i64>::new());
        for s in &sets {
            for (i, &u) in s.iter().enumerate() {
                for &v in &s[..i] {
                    assert!(!g.is_edge(u, v));
                }
            }
        }
        // cross-check the count against direct subset filtering
        let verts: Vec<i64> = g.vertices().collect();
        let mut expected = 0usize;
        for mask in 0u32..(1 << verts.len()) {
            let chosen: Vec<i64> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if chosen.len() > 3 {
                continue;
            }
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(i, &u)| chosen[..i].iter().all(|&v| !g.is_edge(u, v)));
            if ok {
                expected += 1;
            }
        }
        assert_eq!(sets.len(), expected);
    }

    #[test]
    fn trivial_tuple_counts() {
        // no constraints: 7^2
        let g = SumGraph::new(7, &[]).unwrap();
        assert_eq!(count_tuples_via_independent_sets(&g, 2), BigInt::from(49));
        assert_eq!(count_admissible_tuples(2, 7, &[], DEFAULT_BUDGET).unwrap(), BigInt::from(49));
        // n = 1 never violates a pair constraint
        let g = SumGraph::new(7, &[0]).unwrap();
        assert_eq!(count_tuples_via_independent_sets(&g, 1), BigInt::from(7));
        assert_eq!(count_admissible_tuples(1, 7, &[0], DEFAULT_BUDGET).unwrap(), BigInt::from(7));
    }

    #[test]
    fn oracle_values_match_each_other() {
        // ST_{2,1} at t = 11
        let st = ReducedFamily { family: Family::St, n: 2, k_eff: 1 };
        assert_eq!(brute_count_tuples(&st, 11, DEFAULT_BUDGET).unwrap(), BigInt::from(99));
        let g = SumGraph::for_family(&st, 11).unwrap();
        assert_eq!(count_tuples_via_independent_sets(&g, 2), BigInt::from(99));
        // CT_{3,1} at t = 13
        let ct = ReducedFamily { family: Family::Ct, n: 3, k_eff: 1 };
        assert_eq!(brute_count_tuples(&ct, 13, DEFAULT_BUDGET).unwrap(), BigInt::from(1728));
        let g = SumGraph::for_family(&ct, 13).unwrap();
        assert_eq!(count_tuples_via_independent_sets(&g, 3), BigInt::from(1728));
    }

    #[test]
    fn brute_count_rejects_even_modulus() {
        let st = ReducedFamily { family: Family::St, n: 2, k_eff: 1 };
        assert!(brute_count_tuples(&st, 10, DEFAULT_BUDGET).is_err());
        assert!(brute_count_tuples(&st, 1, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_admissible_tuples(4, 101, &[0, 1], 50).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { limit: 50 }));
    }

    #[test]
    fn prime_helpers() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(!is_prime(4));
        assert!(is_prime(97));
        assert!(!is_prime(91)); // 7 * 13
        assert_eq!(odd_primes_from(25, 3), vec![29, 31, 37]);
        assert_eq!(odd_primes_from(29, 1), vec![29]);
        assert_eq!(odd_primes_from(0, 2), vec![3, 5]);
    }
}
