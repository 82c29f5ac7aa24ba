//! Machine check of the index identities that sort generators of adjacent
//! degrees, the within-degree index step, and index parity.
//!
//! The index is passed in as a function so that the harness can be run
//! against deliberately corrupted tables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::index::{IndexEngine, Trivialization};
use crate::orbit::{degree, enumerate_generators, generators_of_degree, FibrationParams, Orbit, ReebCurrent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Highest index in degree `d` plus two is the lowest index in `d + 1`.
    AdjacentDegree { case: u8, family: char },
    /// The generators named by an adjacent-degree identity are the extremes
    /// of their degrees.
    Extremal { case: u8, family: char },
    /// `I(b^y h^H e^{qx+i}) = I(b^{y'} h^H e^{qx'+i}) + 2(y − y')` within a degree.
    WithinDegree,
    /// The index of an admissible current is even.
    Parity,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckKind::AdjacentDegree { case, family } => write!(f, "adjacent-degree case {case}{family}"),
            CheckKind::Extremal { case, family } => write!(f, "extremal generators case {case}{family}"),
            CheckKind::WithinDegree => f.write_str("within-degree step"),
            CheckKind::Parity => f.write_str("parity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: CheckKind,
    pub q: u32,
    pub m: u64,
    pub i: u64,
    pub lhs: ReebCurrent,
    pub rhs: ReebCurrent,
    pub lhs_index: BigInt,
    pub rhs_index: BigInt,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (q = {}, m = {}, i = {}): I({}) = {}, I({}) = {}: {}",
            self.kind, self.q, self.m, self.i, self.lhs, self.lhs_index, self.rhs, self.rhs_index, self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(mut self, other: IdentityReport) -> IdentityReport {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

/// One adjacent-degree identity `I(lower) + 2 = I(upper)`.
#[derive(Debug, Clone, Copy)]
struct Juncture {
    case: u8,
    family: char,
    i: u64,
    lower: ReebCurrent,
    upper: ReebCurrent,
}

/// The two identities for residue `i` and band `m ≥ 1`, with case depending
/// on where `i` falls relative to `(q − 1)/2`.
fn junctures(q: u64, m: u64, i: u64) -> [Juncture; 2] {
    let mid = (q - 1) / 2;
    let c = ReebCurrent::new;
    let j = |case, family, lower, upper| Juncture { case, family, i, lower, upper };
    if i < mid {
        [
            j(1, 'a', c(m - 1, 1, i + mid), c(0, 0, q * m + i)),
            j(1, 'b', c(m, 0, i), c(0, 1, q * (m - 1) + i + mid + 1)),
        ]
    } else if i == mid {
        [
            j(2, 'a', c(m - 1, 1, q - 1), c(0, 0, q * m + mid)),
            j(2, 'b', c(m, 0, mid), c(0, 1, q * m)),
        ]
    } else {
        [
            j(3, 'a', c(m, 1, i - mid - 1), c(0, 0, q * m + i)),
            j(3, 'b', c(m, 0, i), c(0, 1, q * m + i - mid)),
        ]
    }
}

fn check_juncture<F>(params: &FibrationParams, m: u64, jn: &Juncture, index: &F) -> IdentityReport
where
    F: Fn(&ReebCurrent) -> BigInt,
{
    let q = params.q();
    let mut report = IdentityReport::default();
    let li = index(&jn.lower);
    let ui = index(&jn.upper);
    let fail = |kind, detail: String| Failure {
        kind,
        q,
        m,
        i: jn.i,
        lhs: jn.lower,
        rhs: jn.upper,
        lhs_index: li.clone(),
        rhs_index: ui.clone(),
        detail,
    };

    report.checks += 1;
    if &li + 2 != ui {
        report.failures.push(fail(
            CheckKind::AdjacentDegree { case: jn.case, family: jn.family },
            format!("expected I(upper) = I(lower) + 2, difference is {}", &ui - &li),
        ));
    }

    // lower must be the top of its degree, upper the bottom of the next one
    report.checks += 1;
    let dl = degree(params, &jn.lower);
    let du = degree(params, &jn.upper);
    let lower_band = generators_of_degree(params, dl);
    let upper_band = generators_of_degree(params, du);
    let ok = du == dl + 1
        && lower_band.last() == Some(&jn.lower)
        && upper_band.first() == Some(&jn.upper);
    if !ok {
        report.failures.push(fail(
            CheckKind::Extremal { case: jn.case, family: jn.family },
            format!("degrees {dl} -> {du}, bands {lower_band:?} / {upper_band:?}"),
        ));
    }
    report
}

fn check_degree<F>(params: &FibrationParams, d: u128, index: &F) -> IdentityReport
where
    F: Fn(&ReebCurrent) -> BigInt,
{
    let mut report = IdentityReport::default();
    let band = generators_of_degree(params, d);
    let Some(base) = band.first() else {
        return report;
    };
    let base_index = index(base);
    for c in &band {
        let ci = if c == base { base_index.clone() } else { index(c) };
        report.checks += 1;
        if ci.is_odd() {
            report.failures.push(Failure {
                kind: CheckKind::Parity,
                q: params.q(),
                m: 0,
                i: 0,
                lhs: *c,
                rhs: *c,
                lhs_index: ci.clone(),
                rhs_index: ci.clone(),
                detail: format!("odd index in degree {d}"),
            });
        }
        if c == base {
            continue;
        }
        report.checks += 1;
        let want = &base_index + 2 * BigInt::from(c.b - base.b);
        if ci != want {
            report.failures.push(Failure {
                kind: CheckKind::WithinDegree,
                q: params.q(),
                m: 0,
                i: 0,
                lhs: *c,
                rhs: *base,
                lhs_index: ci.clone(),
                rhs_index: base_index.clone(),
                detail: format!("degree {d}: expected {want}"),
            });
        }
    }
    report
}

/// Runs every check for `1 ≤ m ≤ max_m` and all residues, plus the
/// within-degree and parity checks over all degrees below `2q(max_m + 1)`.
pub fn verify_identities_with<F>(params: &FibrationParams, max_m: u64, index: F) -> IdentityReport
where
    F: Fn(&ReebCurrent) -> BigInt + Sync,
{
    let q = params.q64();
    let adjacent = (1..=max_m)
        .into_par_iter()
        .map(|m| {
            (0..q)
                .flat_map(|i| junctures(q, m, i))
                .map(|jn| check_juncture(params, m, &jn, &index))
                .fold(IdentityReport::default(), IdentityReport::merge)
        })
        .collect::<Vec<_>>();
    let top = 2 * q as u128 * (max_m as u128 + 1);
    let bands = (0..top)
        .into_par_iter()
        .map(|d| check_degree(params, d, &index))
        .collect::<Vec<_>>();
    adjacent
        .into_iter()
        .chain(bands)
        .fold(IdentityReport::default(), IdentityReport::merge)
}

pub fn verify_identities(engine: &IndexEngine, max_m: u64) -> IdentityReport {
    verify_identities_with(engine.params(), max_m, |c| engine.ech_index(c))
}

/// Outcome of one of the degree-bounded checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSummary {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl CheckSummary {
    fn new(name: &'static str) -> Self {
        CheckSummary {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 16 {
            self.failures.push(msg);
        }
    }
}

/// Over all admissible currents of degree `≤ max_degree`: every index is
/// even, the sorted indices are exactly `0, 2, …, 2(n−1)`, and degree is
/// nondecreasing in index. The enumeration order is not used.
pub fn verify_bijection_with<F>(params: &FibrationParams, max_degree: u128, index: F) -> CheckSummary
where
    F: Fn(&ReebCurrent) -> BigInt + Sync,
{
    let mut s = CheckSummary::new("bijection");
    let mut indexed: Vec<(BigInt, u128, ReebCurrent)> = enumerate_generators(params, max_degree)
        .into_par_iter()
        .map(|c| (index(&c), degree(params, &c), c))
        .collect();
    indexed.sort_by(|x, y| (&x.0, x.1).cmp(&(&y.0, y.1)));
    for (j, (i, _, c)) in indexed.iter().enumerate() {
        s.checks += 1;
        if i.is_odd() {
            s.fail(format!("I({c}) = {i} is odd"));
        }
        let want = BigInt::from(2 * j as u64);
        if *i != want {
            s.fail(format!("position {j}: I({c}) = {i}, expected {want}"));
        }
    }
    for w in indexed.windows(2) {
        s.checks += 1;
        if w[1].1 < w[0].1 {
            s.fail(format!("degree decreases from {} (I = {}) to {} (I = {})", w[0].2, w[0].0, w[1].2, w[1].0));
        }
    }
    s
}

pub fn verify_bijection(engine: &IndexEngine, max_degree: u128) -> CheckSummary {
    verify_bijection_with(engine.params(), max_degree, |c| engine.ech_index(c))
}

/// `I = c_orb + Q_orb + CZ^I_orb` with `CZ^I_orb` both in closed form and
/// as a direct sum over iterates, for every current of degree `≤ max_degree`.
pub fn verify_components(engine: &IndexEngine, max_degree: u128) -> CheckSummary {
    let params = engine.params();
    let failures: Vec<(u64, Vec<String>)> = enumerate_generators(params, max_degree)
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            let comp = engine.ech_index_components(&c);
            let i = engine.ech_index(&c);
            if comp.sum() != i {
                out.push(format!("I({c}) = {i} but c + Q + CZ = {}", comp.sum()));
            }
            let direct = Orbit::ALL.iter().try_fold(BigInt::from(0), |acc, &o| {
                engine
                    .total_cz_direct(o, c.multiplicity(o), Trivialization::Orb)
                    .map(|v| acc + v)
            });
            match direct {
                Ok(d) if d == comp.total_cz => {}
                Ok(d) => out.push(format!("CZ({c}): closed form {}, iterate sum {d}", comp.total_cz)),
                Err(e) => out.push(format!("CZ({c}): {e}")),
            }
            (2, out)
        })
        .collect();
    let mut s = CheckSummary::new("components");
    for (n, f) in failures {
        s.checks += n;
        f.into_iter().for_each(|m| s.fail(m));
    }
    s
}

/// The binding-current index `B·c_τ + B²·Q_τ + CZ^I_τ` in every
/// trivialization defined over `b` equals `2qB² + (q+3)B`, for `B ≤ max_b`.
pub fn verify_binding_trivializations(engine: &IndexEngine, max_b: u64) -> CheckSummary {
    let mut s = CheckSummary::new("trivializations");
    let q = BigInt::from(engine.params().q());
    for b in 0..=max_b {
        let bb = BigInt::from(b);
        let want = 2 * &q * &bb * &bb + (&q + 3) * &bb;
        for triv in Trivialization::ALL {
            if !triv.is_defined_over(engine.params(), Orbit::B, 1) {
                continue;
            }
            s.checks += 1;
            match engine.ech_index_components_in(&ReebCurrent::new(b, 0, 0), triv) {
                Ok(c) if c.sum() == want => {}
                Ok(c) => s.fail(format!("I(b^{b}) in {triv} is {}, expected {want}", c.sum())),
                Err(e) => s.fail(format!("I(b^{b}) in {triv}: {e}")),
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(q: i64) -> IndexEngine {
        IndexEngine::new(FibrationParams::new(q).unwrap()).unwrap()
    }

    #[test]
    fn trefoil_passes() {
        let r = verify_identities(&engine(3), 10);
        assert!(r.pass(), "{:?}", r.failures.first());
        assert!(r.checks > 0);
    }

    #[test]
    fn q31_passes() {
        let r = verify_identities(&engine(31), 50);
        assert!(r.pass(), "{:?}", r.failures.first());
    }

    #[test]
    fn t25_examples_from_degree_walkthrough() {
        // degrees 9, 10, 11 for q = 5 are case 1 with m = 1, i = 0
        let [a, b] = junctures(5, 1, 0);
        assert_eq!((a.lower.to_string(), a.upper.to_string()), ("he^2".into(), "e^5".into()));
        assert_eq!((b.lower.to_string(), b.upper.to_string()), ("b".into(), "he^3".into()));
        // degrees 13, 14, 15 are case 2
        let [a, b] = junctures(5, 1, 2);
        assert_eq!((a.lower.to_string(), a.upper.to_string()), ("he^4".into(), "e^7".into()));
        assert_eq!((b.lower.to_string(), b.upper.to_string()), ("be^2".into(), "he^5".into()));
        // degrees 17, 18, 19 are case 3
        let [a, b] = junctures(5, 1, 4);
        assert_eq!((a.lower.to_string(), a.upper.to_string()), ("bhe".into(), "e^9".into()));
        assert_eq!((b.lower.to_string(), b.upper.to_string()), ("be^4".into(), "he^7".into()));
    }

    #[test]
    fn corrupted_middle_generator_fails_once() {
        let eng = engine(3);
        let bad = ReebCurrent::new(1, 0, 3);
        let r = verify_identities_with(eng.params(), 10, |c| {
            let i = eng.ech_index(c);
            if *c == bad {
                i + 2
            } else {
                i
            }
        });
        assert_eq!(r.failures.len(), 1, "{:#?}", r.failures);
        assert_eq!(r.failures[0].kind, CheckKind::WithinDegree);
        assert_eq!(r.failures[0].lhs, bad);
    }

    #[test]
    fn corrupted_extreme_generator_is_caught() {
        let eng = engine(5);
        let bad = ReebCurrent::new(0, 0, 5);
        let r = verify_identities_with(eng.params(), 4, |c| {
            let i = eng.ech_index(c);
            if *c == bad {
                i - 2
            } else {
                i
            }
        });
        assert!(!r.pass());
        assert!(r
            .failures
            .iter()
            .any(|f| matches!(f.kind, CheckKind::AdjacentDegree { case: 1, family: 'a' })));
    }

    #[test]
    fn bijection_and_components_pass() {
        for q in [3, 5, 11] {
            let eng = engine(q);
            let b = verify_bijection(&eng, 120);
            assert!(b.pass() && b.checks > 0, "{:?}", b.failures);
            let c = verify_components(&eng, 120);
            assert!(c.pass() && c.checks > 0, "{:?}", c.failures);
            let t = verify_binding_trivializations(&eng, 40);
            assert!(t.pass() && t.checks == 41 * 5, "{:?}", t.failures);
        }
    }

    #[test]
    fn bijection_detects_shifted_index() {
        let eng = engine(3);
        let bad = ReebCurrent::new(1, 0, 3);
        let s = verify_bijection_with(eng.params(), 30, |c| {
            let i = eng.ech_index(c);
            if *c == bad {
                i + 2
            } else {
                i
            }
        });
        assert!(!s.pass());
    }

    #[test]
    fn odd_corruption_trips_parity() {
        let eng = engine(7);
        let bad = ReebCurrent::new(0, 1, 2);
        let r = verify_identities_with(eng.params(), 2, |c| {
            let i = eng.ech_index(c);
            if *c == bad {
                i + 1
            } else {
                i
            }
        });
        assert!(r.failures.iter().any(|f| f.kind == CheckKind::Parity));
    }
}
