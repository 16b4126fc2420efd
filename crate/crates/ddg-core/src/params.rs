//! Feasible parameter tuples of proper divisible design graphs and the
//! admissible eigenvalue multiplicities attached to them.
//!
//! Everything here is exact integer arithmetic; square roots only ever enter
//! through [`integer_sqrt_exact`].

use serde::{Deserialize, Serialize};
use std::fmt;

/// A parameter tuple `(v, k, lambda1, lambda2, m, n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamSet {
    pub v: u32,
    pub k: u32,
    pub lambda1: u32,
    pub lambda2: u32,
    pub m: u32,
    pub n: u32,
}

impl fmt::Debug for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.v, self.k, self.lambda1, self.lambda2, self.m, self.n
        )
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl ParamSet {
    pub fn new(v: u32, k: u32, lambda1: u32, lambda2: u32, m: u32, n: u32) -> Self {
        ParamSet { v, k, lambda1, lambda2, m, n }
    }

    pub fn from_tuple(t: (u32, u32, u32, u32, u32, u32)) -> Self {
        ParamSet::new(t.0, t.1, t.2, t.3, t.4, t.5)
    }

    /// `v = mn` and the row-sum identity `k^2 = k + l1(n-1) + l2 n(m-1)`.
    pub fn satisfies_identities(&self) -> bool {
        let (v, k, l1, l2, m, n) =
            (self.v as u64, self.k as u64, self.lambda1 as u64, self.lambda2 as u64, self.m as u64, self.n as u64);
        v == m * n && k * k == k + l1 * (n - 1) + l2 * n * (m - 1)
    }

    /// Proper: more than one class, classes bigger than one, distinct lambdas.
    pub fn is_proper(&self) -> bool {
        self.m > 1 && self.n > 1 && self.lambda1 != self.lambda2
    }

    /// `k - lambda1`, the radicand of the first eigenvalue pair.
    pub fn rsq(&self) -> u64 {
        (self.k - self.lambda1) as u64
    }

    /// `k^2 - lambda2 * v`, the radicand of the second eigenvalue pair.
    /// `None` when negative (no real spectrum, tuple infeasible).
    pub fn ssq(&self) -> Option<u64> {
        let kk = self.k as u64 * self.k as u64;
        kk.checked_sub(self.lambda2 as u64 * self.v as u64)
    }

    pub fn family_flags(&self) -> FamilyFlags {
        FamilyFlags {
            incidence: self.lambda2 == 0,
            tensor: self.lambda1 == self.k,
            diag_blowup: self.lambda2 as i64 == 2 * self.k as i64 - self.v as i64,
            near_complete_classes: self.lambda1 + 1 == self.k,
        }
    }
}

/// Characterized parameter families; such tuples are excluded from the
/// default catalog but remain runnable on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFlags {
    /// lambda2 = 0: incidence graphs of designs.
    pub incidence: bool,
    /// lambda1 = k: tensor blowups A' (x) J_n.
    pub tensor: bool,
    /// lambda2 = 2k - v: all-but-diagonal complements.
    pub diag_blowup: bool,
    /// lambda1 = k - 1: graph compositions with K_2 and their switchings.
    pub near_complete_classes: bool,
}

impl FamilyFlags {
    pub fn any(&self) -> bool {
        self.incidence || self.tensor || self.diag_blowup || self.near_complete_classes
    }
}

/// Eigenvalue data of a DDG: radicands and one admissible multiplicity split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumProfile {
    pub rsq: u64,
    pub ssq: u64,
    pub f1: u32,
    pub f2: u32,
    pub g1: u32,
    pub g2: u32,
    pub r_is_square: bool,
    pub s_is_square: bool,
}

impl SpectrumProfile {
    /// Number of distinct eigenvalues of a graph realizing this profile
    /// (including the principal eigenvalue `k`).
    pub fn distinct_eigenvalues(&self, k: u32) -> usize {
        let mut values: Vec<(i64, u64)> = vec![(k as i64, 0)]; // (rational part, radicand)
        let mut push = |mult: u32, val: (i64, u64)| {
            if mult > 0 && !values.contains(&val) {
                values.push(val);
            }
        };
        let rval = |sign: i64, sq: u64| -> (i64, u64) {
            match integer_sqrt_exact(sq) {
                Some(r) => (sign * r as i64, 0),
                None => (sign, sq),
            }
        };
        push(self.f1, rval(1, self.rsq));
        push(self.f2, rval(-1, self.rsq));
        push(self.g1, rval(1, self.ssq));
        push(self.g2, rval(-1, self.ssq));
        values.len()
    }
}

/// Exact integer square root: `Some(y)` iff `y*y == x`.
pub fn integer_sqrt_exact(x: u64) -> Option<u64> {
    let y = x.isqrt();
    (y * y == x).then_some(y)
}

/// A feasible tuple together with every admissible multiplicity splitting.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FeasibleTuple {
    pub params: ParamSet,
    pub profiles: Vec<SpectrumProfile>,
    pub families: FamilyFlags,
}

/// All admissible `(f1, f2, g1, g2)` splittings for a tuple.
///
/// An empty list signals an infeasible spectrum: either neither radicand is a
/// nonzero square, or no integral splitting balances the trace.
pub fn multiplicity_options(p: &ParamSet) -> Vec<SpectrumProfile> {
    let rsq = p.rsq();
    let ssq = match p.ssq() {
        Some(s) => s,
        None => return Vec::new(),
    };
    let r = integer_sqrt_exact(rsq);
    let s = integer_sqrt_exact(ssq);
    // at least one of the radicands must be a nonzero square
    if !(matches!(r, Some(x) if x > 0) || matches!(s, Some(x) if x > 0)) {
        return Vec::new();
    }
    if rsq == ssq {
        return Vec::new();
    }
    let fsum = (p.m * (p.n - 1)) as i64;
    let gsum = (p.m - 1) as i64;
    let k = p.k as i64;

    // candidate g-splits and the value of (g1 - g2) * sqrt(ssq)
    let g_candidates: Vec<(i64, i64, i64)> = if ssq == 0 {
        vec![(gsum, 0, 0)]
    } else if let Some(s) = s {
        (0..=gsum)
            .map(|g1| (g1, gsum - g1, (2 * g1 - gsum) * s as i64))
            .collect()
    } else {
        if gsum % 2 != 0 {
            return Vec::new();
        }
        vec![(gsum / 2, gsum / 2, 0)]
    };

    let mut out = Vec::new();
    for (g1, g2, s_term) in g_candidates {
        let t = k + s_term; // must equal -(f1 - f2) * sqrt(rsq)
        let f_split: Option<(i64, i64)> = if rsq == 0 {
            (t == 0).then_some((fsum, 0))
        } else if let Some(r) = r {
            let r = r as i64;
            if t % r == 0 {
                let d = -t / r;
                if (fsum + d) % 2 == 0 {
                    let f1 = (fsum + d) / 2;
                    let f2 = fsum - f1;
                    (f1 >= 0 && f2 >= 0).then_some((f1, f2))
                } else {
                    None
                }
            } else {
                None
            }
        } else {
            (t == 0 && fsum % 2 == 0).then_some((fsum / 2, fsum / 2))
        };
        if let Some((f1, f2)) = f_split {
            // trace(A) = 0 is impossible with both splits balanced
            if f1 == f2 && g1 == g2 {
                continue;
            }
            out.push(SpectrumProfile {
                rsq,
                ssq,
                f1: f1 as u32,
                f2: f2 as u32,
                g1: g1 as u32,
                g2: g2 as u32,
                r_is_square: r.is_some(),
                s_is_square: s.is_some(),
            });
        }
    }
    out
}

/// All proper feasible tuples on `v` vertices surviving the screening
/// filters, each annotated with its admissible multiplicity splittings and
/// family flags. Characterized families are flagged, never dropped.
pub fn feasible_parameters(v: u32) -> Vec<FeasibleTuple> {
    let mut out = Vec::new();
    if v < 6 {
        return out;
    }
    for m in 2..=v {
        if v % m != 0 {
            continue;
        }
        let n = v / m;
        if n < 2 {
            continue;
        }
        for k in 3..=v.saturating_sub(3) {
            let lo = 2 * k as i64 - v as i64;
            let lo = lo.max(0) as u32;
            for l1 in lo..=k {
                for l2 in lo..=k {
                    if l1 == l2 {
                        continue;
                    }
                    let p = ParamSet::new(v, k, l1, l2, m, n);
                    if !p.satisfies_identities() {
                        continue;
                    }
                    if !passes_divisibility(&p) || !passes_exclusions(&p) {
                        continue;
                    }
                    let profiles = multiplicity_options(&p);
                    if profiles.is_empty() {
                        continue;
                    }
                    out.push(FeasibleTuple { params: p, profiles, families: p.family_flags() });
                }
            }
        }
    }
    out.sort_by_key(|t| t.params);
    out
}

fn passes_divisibility(p: &ParamSet) -> bool {
    let (v, k, l1, l2, m, n) =
        (p.v as u64, p.k as u64, p.lambda1 as u64, p.lambda2 as u64, p.m as u64, p.n as u64);
    let s = l1 * (n - 1) + l2 * n * (m - 1);
    s % (k - 1) == 0 && (v * s) % (k * (k - 1)) == 0
}

fn passes_exclusions(p: &ParamSet) -> bool {
    // lambda1 = k - 1 forces even class size
    if p.lambda1 + 1 == p.k && p.n % 2 == 1 {
        return false;
    }
    match p.ssq() {
        None => false,
        Some(ssq) => ssq != p.rsq(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_exact() {
        assert_eq!(integer_sqrt_exact(49), Some(7));
        assert_eq!(integer_sqrt_exact(48), None);
        assert_eq!(integer_sqrt_exact(0), Some(0));
        assert_eq!(integer_sqrt_exact(u64::MAX), None);
    }

    #[test]
    fn v8_contains_the_lattice_tuple() {
        let tuples = feasible_parameters(8);
        assert!(tuples
            .iter()
            .any(|t| t.params == ParamSet::new(8, 4, 0, 2, 4, 2) && !t.families.any()));
    }

    #[test]
    fn tiny_v_is_empty() {
        assert!(feasible_parameters(4).is_empty());
    }

    #[test]
    fn v27_contains_table_rows() {
        let tuples = feasible_parameters(27);
        for t in [(27, 8, 4, 2, 9, 3), (27, 18, 9, 12, 9, 3)] {
            assert!(
                tuples.iter().any(|f| f.params == ParamSet::from_tuple(t)),
                "missing {t:?}"
            );
        }
    }

    #[test]
    fn multiplicities_20_9_0_4() {
        let p = ParamSet::new(20, 9, 0, 4, 10, 2);
        let opts = multiplicity_options(&p);
        let has = |f1, f2, g1, g2| {
            opts.iter()
                .any(|o| (o.f1, o.f2, o.g1, o.g2) == (f1, f2, g1, g2))
        };
        assert!(has(4, 6, 3, 6));
        assert!(has(5, 5, 0, 9));
    }

    #[test]
    fn multiplicities_12_5_0_2_forced() {
        // rsq = 5 is not a square, so the f-split is pinned at (3,3)
        let p = ParamSet::new(12, 5, 0, 2, 6, 2);
        let opts = multiplicity_options(&p);
        assert_eq!(opts.len(), 1);
        assert_eq!((opts[0].f1, opts[0].f2, opts[0].g1, opts[0].g2), (3, 3, 0, 5));
    }

    #[test]
    fn both_nonsquare_is_rejected() {
        // k - l1 = 3, k^2 - l2 v = 27: neither is a square
        let p = ParamSet::new(18, 6, 3, 1, 6, 3);
        assert!(multiplicity_options(&p).is_empty());
    }

    #[test]
    fn emitted_tuples_satisfy_lemma_identities() {
        for v in [8u32, 12, 16, 20, 24] {
            for t in feasible_parameters(v) {
                assert!(t.params.satisfies_identities());
                assert!(t.params.is_proper());
                let fsum = t.params.m * (t.params.n - 1);
                let gsum = t.params.m - 1;
                for pr in &t.profiles {
                    assert_eq!(pr.f1 + pr.f2, fsum);
                    assert_eq!(pr.g1 + pr.g2, gsum);
                    // exact trace identity over the integers
                    let term = |mult_diff: i64, sq: u64| match integer_sqrt_exact(sq) {
                        Some(r) => mult_diff * r as i64,
                        None => {
                            assert_eq!(mult_diff, 0);
                            0
                        }
                    };
                    let tr = t.params.k as i64
                        + term(pr.f1 as i64 - pr.f2 as i64, pr.rsq)
                        + term(pr.g1 as i64 - pr.g2 as i64, pr.ssq);
                    assert_eq!(tr, 0, "trace identity fails for {:?} {pr:?}", t.params);
                }
            }
        }
    }
}
