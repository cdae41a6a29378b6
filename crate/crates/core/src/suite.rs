//! The acceptance criteria as runnable checks, shared by the test suite and
//! the `verify` command. Randomized parts draw from a seeded ChaCha stream.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmat::{column_echelon, power_is_unipotent, roots_of_unity_eigenvalues, smith_normal_form, IntMatrix};
use crate::heis::{mat3_mul, mat3_mul_int, HeisElement, HeisGroup, HeisSubgroupData};
use crate::numth::{epsilon, k_max, parse_rational};
use crate::quotient::{
    heis_grid, heis_quotient, kodaira_grid, sm_grid, spm_grid, GridRecord, HeisGridLimits, KodairaGridLimits, SmGridLimits,
    SpmGridLimits,
};
use crate::wang::{psi_automorphism, InoueType, WangDescriptor, WangGroup};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn code(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Result of one criterion. `observed` and `bound` are short exact summaries.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub inputs: String,
    pub observed: String,
    pub bound: String,
    pub status: Status,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    /// `PASS [3] name: observed … (bound …)`, without timings.
    pub fn line(&self) -> String {
        format!("{} [{}] {}: {} (bound {}; inputs {})", self.status.code(), self.id, self.name, self.observed, self.bound, self.inputs)
    }
}

/// Criterion groups selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    All,
    Heis,
    Quot,
    Numth,
}

impl Group {
    pub fn ids(self) -> &'static [u8] {
        match self {
            Group::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
            Group::Heis => &[1, 2, 3, 9],
            Group::Quot => &[2, 3, 4, 5],
            Group::Numth => &[6, 7, 8, 10],
        }
    }
}

/// Grid results shared between criteria, each built once with its build time.
#[derive(Default)]
pub struct Grids {
    heis: OnceLock<(Vec<GridRecord>, Duration)>,
    kodaira: OnceLock<(Vec<GridRecord>, Duration)>,
    sm: OnceLock<(Vec<GridRecord>, Duration)>,
    spm: OnceLock<(Vec<GridRecord>, Duration)>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let x = f();
    (x, t.elapsed())
}

impl Grids {
    pub fn heis(&self) -> &(Vec<GridRecord>, Duration) {
        self.heis.get_or_init(|| timed(|| heis_grid(&HeisGridLimits::default()).expect("heis grid")))
    }

    pub fn kodaira(&self) -> &(Vec<GridRecord>, Duration) {
        self.kodaira.get_or_init(|| timed(|| kodaira_grid(&KodairaGridLimits::default()).expect("kodaira grid")))
    }

    pub fn sm(&self) -> &(Vec<GridRecord>, Duration) {
        self.sm.get_or_init(|| timed(|| sm_grid(&SmGridLimits::default()).expect("sm grid")))
    }

    pub fn spm(&self) -> &(Vec<GridRecord>, Duration) {
        self.spm.get_or_init(|| timed(|| spm_grid(&SpmGridLimits::default()).expect("spm grid")))
    }
}

pub struct Suite {
    pub seed: u64,
    pub grids: Grids,
}

impl Suite {
    pub fn new(seed: u64) -> Self {
        Suite { seed, grids: Grids::default() }
    }

    fn rng(&self, id: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (u64::from(id) << 56))
    }

    pub fn run(&self, id: u8) -> Outcome {
        match id {
            1 => self.heis_embedding(),
            2 => self.heis_gcd_bound(),
            3 => self.heis_r1_bound(),
            4 => self.kodaira_bound(),
            5 => self.quotient_structure(),
            6 => self.roots_of_unity(),
            7 => self.epsilon_and_k_max(),
            8 => self.classification(),
            9 => self.psi_witness(),
            10 => self.normal_forms(),
            _ => panic!("no criterion {id}"),
        }
    }

    pub fn run_group(&self, group: Group) -> Vec<Outcome> {
        group.ids().iter().map(|&id| self.run(id)).collect()
    }

    pub fn heis_embedding(&self) -> Outcome {
        let mut rng = self.rng(1);
        let pairs = 100_000;
        let (bad, elapsed) = timed(|| {
            let mut bad = 0usize;
            for r in 1..=5 {
                let h = HeisGroup::with_r(r);
                let rb = BigInt::from(r);
                for i in 0..pairs {
                    let x = random_heis(&mut rng);
                    let y = random_heis(&mut rng);
                    let xy = h.mul(&x, &y);
                    // (rX)(rY) = r·(r·XY); every 64th pair also through rationals
                    let lhs = h.to_scaled_matrix(&xy).map(|row| row.map(|e| e * &rb));
                    let mut ok = lhs == mat3_mul_int(&h.to_scaled_matrix(&x), &h.to_scaled_matrix(&y));
                    if i % 64 == 0 {
                        ok &= h.to_matrix(&xy) == mat3_mul(&h.to_matrix(&x), &h.to_matrix(&y));
                    }
                    bad += usize::from(!ok);
                }
            }
            bad
        });
        finish(1, "Heisenberg law vs matrix embedding", format!("seed {}, 10^5 pairs for r = 1..5", self.seed), bad, "0 mismatches".into(), elapsed, 10)
    }

    fn heis_records(&self, id: u8, name: &'static str, pick: impl Fn(&str) -> bool, label: &str) -> Outcome {
        let (records, elapsed) = self.grids.heis();
        let failed = count_failed(records, &pick);
        let checked = records.iter().filter(|r| r.report.checks.iter().any(|c| pick(&c.name))).count();
        let mut o = finish(id, name, format!("{checked} grid instances"), failed, format!("0 instances above {label}"), *elapsed, 300);
        if id == 2 {
            let (mismatch, n) = search_cross_check();
            o.observed = format!("{}; search routes agree on {}/{} quotients", o.observed, n - mismatch, n);
            if mismatch > 0 {
                o.status = Status::Fail;
            }
        }
        o
    }

    pub fn heis_gcd_bound(&self) -> Outcome {
        self.heis_records(2, "Heisenberg subgroup bound gcd(a1,b1)", |n| n == "gcd(a1,b1)", "gcd(a1,b1)")
    }

    pub fn heis_r1_bound(&self) -> Outcome {
        self.heis_records(3, "Heisenberg quotient bound r1 and chain", |n| n == "r1" || n.starts_with("chain"), "r1 or a broken chain link")
    }

    pub fn kodaira_bound(&self) -> Outcome {
        let (records, elapsed) = self.grids.kodaira();
        let failed = records.iter().filter(|r| !r.report.pass()).count();
        let max_order = records.iter().map(|r| r.report.order).max().unwrap_or(0);
        let differ = records.iter().filter(|r| r.report.gamma_r.as_ref() != Some(&r.report.bound)).count();
        let enough = records.len() >= 200 && max_order <= 256;
        let mut o = finish(
            4,
            "Kodaira quotients: index at most r",
            format!("{} nested pairs, r̂ ∈ {{1,2}}, |G| ≤ {max_order}", records.len()),
            failed,
            "0 failures, ≥ 200 pairs".into(),
            *elapsed,
            120,
        );
        o.observed = format!("{}; r(Γ) ≠ iso_type(Γ₀') on {differ}", o.observed);
        if !enough {
            o.status = Status::Fail;
        }
        o
    }

    pub fn quotient_structure(&self) -> Outcome {
        let t = Instant::now();
        let grids = [self.grids.heis(), self.grids.kodaira(), self.grids.sm(), self.grids.spm()];
        let total: usize = grids.iter().map(|(r, _)| r.len()).sum();
        let bad: usize = grids.iter().map(|(r, _)| r.iter().filter(|x| !x.report.structure_ok).count()).sum();
        let sizes: Vec<String> = grids.iter().map(|(r, _)| r.len().to_string()).collect();
        let build: Duration = grids.iter().map(|(_, d)| *d).sum();
        outcome(
            5,
            "quotient structure |G| = [Γ₀:Γ₀']·k, image of Γ₀ normal of index k",
            format!("{total} quotients (heis/kodaira/sm/spm = {})", sizes.join("/")),
            format!("{bad} failures"),
            "0 failures".into(),
            bad == 0,
            build.max(t.elapsed()),
            None,
        )
    }

    pub fn roots_of_unity(&self) -> Outcome {
        let mut rng = self.rng(6);
        let ((bad, all), elapsed) = timed(|| {
            let (mut bad, mut all) = (0usize, 0usize);
            for i in 0..10_000 {
                let m = random_unimodular(&mut rng, 2 + i % 2, 20);
                let a = roots_of_unity_eigenvalues(&m).expect("unimodular").is_all();
                let b = power_is_unipotent(&m).expect("unimodular");
                bad += usize::from(a != b);
                all += usize::from(a);
            }
            (bad, all)
        });
        let mut o = finish(6, "roots of unity: cyclotomic split vs M^N unipotent", format!("seed {}, 10^4 matrices of size 2 and 3", self.seed), bad, "0 disagreements".into(), elapsed, 30);
        o.observed = format!("{}; {all} with all eigenvalues roots of unity", o.observed);
        o
    }

    pub fn epsilon_and_k_max(&self) -> Outcome {
        let mut rng = self.rng(7);
        let (problems, elapsed) = timed(|| {
            let mut problems = Vec::new();
            let frozen = [(1, "1"), (2, "0.414213562373"), (3, "0.245122333753")];
            for (n, text) in frozen {
                let want = parse_rational(text).expect("frozen constant");
                match epsilon(n) {
                    Ok(c) if c.epsilon == want => {}
                    Ok(c) => problems.push(format!("ε({n}) = {}", c.epsilon)),
                    Err(e) => problems.push(format!("ε({n}): {e}")),
                }
            }
            let km = k_max(&IntMatrix::from_i64([[2, 1], [1, 1]]), &parse_rational("0.41").expect("literal"));
            if km != Ok(2) {
                problems.push(format!("k_max([[2,1],[1,1]], 0.41) = {km:?}"));
            }
            let mut probes = 0;
            while probes < 100 {
                let n = 2 + probes % 2;
                let m = random_unimodular(&mut rng, n, 12);
                if roots_of_unity_eigenvalues(&m).expect("unimodular").is_all() {
                    continue;
                }
                let mut e = [random_eps(&mut rng), random_eps(&mut rng)];
                e.sort();
                let (lo, hi) = (k_max(&m, &e[0]).expect("bound exists"), k_max(&m, &e[1]).expect("bound exists"));
                if lo < hi {
                    problems.push(format!("k_max not monotone for {m} at {} < {}", e[0], e[1]));
                }
                probes += 1;
            }
            problems
        });
        let observed = if problems.is_empty() { "ε(1..3) frozen, k_max(·,0.41) = 2, 100 monotone probes".to_string() } else { problems.join("; ") };
        outcome(7, "ε(n) constants and k_max", format!("seed {}", self.seed), observed, "exact equality".into(), problems.is_empty(), elapsed, None)
    }

    pub fn classification(&self) -> Outcome {
        let mut rng = self.rng(8);
        let (problems, elapsed) = timed(|| {
            let mut problems = Vec::new();
            let fixtures = [
                (WangDescriptor::sm(IntMatrix::from_i64([[0, 0, 1], [1, 0, 1], [0, 1, 0]])), InoueType::SM),
                (WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 1]]), 1, [0, 0]), InoueType::SPlus),
                (WangDescriptor::spm(IntMatrix::from_i64([[2, 1], [1, 0]]), 1, [0, 0]), InoueType::SMinus),
            ];
            for (d, want) in fixtures {
                let got = WangGroup::new(d.clone()).map(|g| g.classify_type());
                if got != Ok(want) {
                    problems.push(format!("{} classified as {got:?}", d.shape_name()));
                }
            }
            let mut done = 0;
            while done < 500 {
                let d = random_descriptor(&mut rng);
                let Ok(g) = WangGroup::new(d.clone()) else { continue };
                done += 1;
                if g.inoue_criteria().iter().filter(|&&c| c).count() != 1 {
                    problems.push(format!("criteria {:?} for {d:?}", g.inoue_criteria()));
                    continue;
                }
                let m = d.matrix().expect("Inoue shape");
                let p = random_unimodular(&mut rng, m.nrows(), 10);
                let conj = &(&p * m) * &p.inverse_unimodular().expect("unimodular");
                let d2 = match &d {
                    WangDescriptor::Sm { .. } => WangDescriptor::Sm { m: conj },
                    WangDescriptor::Spm { r, p, .. } => WangDescriptor::Spm { m: conj, r: r.clone(), p: p.clone(), center_exponent: None },
                    WangDescriptor::Kodaira { .. } => unreachable!(),
                };
                match WangGroup::new(d2) {
                    Ok(g2) if g2.classify_type() == g.classify_type() => {}
                    other => problems.push(format!("conjugate of {d:?} gives {:?}", other.map(|g| g.classify_type()))),
                }
            }
            problems
        });
        let observed = if problems.is_empty() { "fixtures S_M/S_PLUS/S_MINUS; 500 random descriptors, one criterion each, conjugation invariant".to_string() } else { problems.join("; ") };
        outcome(8, "classification trichotomy", format!("seed {}", self.seed), observed, "exact".into(), problems.is_empty(), elapsed, None)
    }

    pub fn psi_witness(&self) -> Outcome {
        let (problems, elapsed) = timed(|| {
            let mut problems = Vec::new();
            for r in 1..=5 {
                let psi = psi_automorphism(&BigInt::from(r)).expect("r > 0");
                if let Err(e) = psi.check_relations() {
                    problems.push(format!("r = {r}: {e}"));
                }
                match psi.gamma0_not_preserved_witness() {
                    Some((x, y)) if x.t.is_zero() && !y.t.is_zero() => {}
                    other => problems.push(format!("r = {r}: no witness ({other:?})")),
                }
            }
            problems
        });
        let observed = if problems.is_empty() { "relations hold and ψ(Γ₀) ≠ Γ₀ for r = 1..5".to_string() } else { problems.join("; ") };
        outcome(9, "ψ is an automorphism not preserving Γ₀", "r = 1..5".into(), observed, "exact".into(), problems.is_empty(), elapsed, None)
    }

    pub fn normal_forms(&self) -> Outcome {
        let mut rng = self.rng(10);
        let (bad, elapsed) = timed(|| {
            let mut bad = Vec::new();
            for _ in 0..10_000 {
                let (rows, cols) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
                let a = IntMatrix::from_rows((0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect()).collect())
                    .expect("rectangular");
                if let Err(e) = check_smith(&a).and_then(|()| check_echelon(&a)) {
                    bad.push(format!("{a}: {e}"));
                }
            }
            bad
        });
        let mut o = finish(10, "Smith and Hermite normal forms", format!("seed {}, 10^4 matrices up to 4×4", self.seed), bad.len(), "0 violations".into(), elapsed, 20);
        if let Some(first) = bad.first() {
            o.observed = format!("{}; first: {first}", o.observed);
        }
        o
    }
}

fn finish(id: u8, name: &'static str, inputs: String, failures: usize, bound: String, elapsed: Duration, limit_s: u64) -> Outcome {
    let limit = Some(Duration::from_secs(limit_s));
    let observed = format!("{failures} failures");
    outcome(id, name, inputs, observed, bound, failures == 0, elapsed, limit)
}

#[allow(clippy::too_many_arguments)]
fn outcome(id: u8, name: &'static str, inputs: String, observed: String, bound: String, ok: bool, elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let in_time = limit.is_none_or(|l| elapsed < l);
    Outcome { id, name, inputs, observed, bound, status: Status::from_bool(ok && in_time), elapsed, limit }
}

fn count_failed(records: &[GridRecord], pick: &impl Fn(&str) -> bool) -> usize {
    records.iter().filter(|r| r.report.checks.iter().any(|c| pick(&c.name) && !c.holds)).count()
}

/// Compares the class-growing search with the cyclic-extension filter on
/// every distinct Heisenberg quotient with entries in `[-2, 2]`, `r ≤ 2`
/// and order at most 64. Returns `(mismatches, compared)`.
pub fn search_cross_check() -> (usize, usize) {
    let mut seen = BTreeSet::new();
    for r in 1..=2i64 {
        for a1 in -2..=2i64 {
            for a2 in -2..=2 {
                for b1 in -2..=2 {
                    for b2 in -2..=2 {
                        let g = a1.gcd(&a2).gcd(&b1).gcd(&b2) * r;
                        for c in (1..=g).filter(|c| g % c == 0) {
                            let Ok(d) = HeisSubgroupData::from_i64([a1, a2, 0], [b1, b2, 0], c, r) else { continue };
                            if d.index() <= BigInt::from(64) {
                                seen.insert(d.canonical());
                            }
                        }
                    }
                }
            }
        }
    }
    let mismatches = seen
        .iter()
        .filter(|d| {
            let (t, _) = heis_quotient(d, 64).expect("small quotient");
            let fast = t.min_index_normal_abelian().expect("small");
            let slow = t.normal_abelian_by_filter().expect("small").iter().map(|(_, i)| *i).min();
            Some(fast) != slow
        })
        .count();
    (mismatches, seen.len())
}

fn random_int(rng: &mut ChaCha8Rng) -> BigInt {
    if rng.gen_ratio(1, 8) {
        // beyond 64 bits
        let hi = BigInt::from(rng.gen::<u64>()) << 64u32;
        let x = hi + BigInt::from(rng.gen::<u64>());
        if rng.gen() {
            -x
        } else {
            x
        }
    } else {
        BigInt::from(rng.gen_range(-1000i64..=1000))
    }
}

fn random_heis(rng: &mut ChaCha8Rng) -> HeisElement {
    HeisElement::new(random_int(rng), random_int(rng), random_int(rng))
}

/// A product of at most `steps` elementary matrices `Id ± E_ij` and sign flips; `n ≥ 2`.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..rng.gen_range(0..=steps) {
        let i = rng.gen_range(0..n);
        if rng.gen_ratio(1, 6) {
            m.negate_row(i);
            continue;
        }
        let j = (i + rng.gen_range(1..n)) % n;
        let k = *[-1i64, 1].choose(rng).expect("nonempty");
        m = &IntMatrix::elementary(n, i, j, BigInt::from(k)) * &m;
    }
    m
}

fn random_eps(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(1i64..=1000)), BigInt::from(1000))
}

fn random_descriptor(rng: &mut ChaCha8Rng) -> WangDescriptor {
    if rng.gen() {
        WangDescriptor::Sm { m: random_unimodular(rng, 3, 14) }
    } else {
        let m = random_unimodular(rng, 2, 10);
        let p = [BigInt::from(rng.gen_range(-3i64..=3)), BigInt::from(rng.gen_range(-3i64..=3))];
        WangDescriptor::Spm { m, r: BigInt::from(rng.gen_range(1i64..=5)), p, center_exponent: None }
    }
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.is_square() && m.det().abs().is_one()
}

fn check_smith(a: &IntMatrix) -> Result<(), String> {
    let s = smith_normal_form(a);
    if &(&s.u * a) * &s.v != s.d {
        return Err("U·A·V ≠ D".into());
    }
    if !is_unimodular(&s.u) || !is_unimodular(&s.v) {
        return Err("U or V not unimodular".into());
    }
    for i in 0..s.d.nrows() {
        for j in 0..s.d.ncols() {
            if i != j && !s.d[(i, j)].is_zero() {
                return Err("D not diagonal".into());
            }
        }
    }
    let f = s.invariant_factors();
    if f.iter().any(|x| x.is_negative()) {
        return Err("negative invariant factor".into());
    }
    for w in f.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    if a.is_square() && a.det().abs() != f.iter().fold(BigInt::one(), |p, x| p * x) {
        return Err("|det| not preserved".into());
    }
    Ok(())
}

fn check_echelon(a: &IntMatrix) -> Result<(), String> {
    let (h, u, rank) = column_echelon(a);
    if a * &u != h {
        return Err("A·U ≠ H".into());
    }
    if !is_unimodular(&u) {
        return Err("U not unimodular".into());
    }
    let mut last_row = None;
    for p in 0..h.ncols() {
        let pivot = (0..h.nrows()).find(|&i| !h[(i, p)].is_zero());
        match (p < rank, pivot) {
            (false, None) => continue,
            (false, Some(_)) => return Err("nonzero column after the rank".into()),
            (true, None) => return Err("zero column before the rank".into()),
            (true, Some(i)) => {
                if last_row.is_some_and(|l| i <= l) {
                    return Err("pivot rows not increasing".into());
                }
                if !h[(i, p)].is_positive() {
                    return Err("pivot not positive".into());
                }
                if (0..p).any(|j| h[(i, j)].is_negative() || h[(i, j)] >= h[(i, p)]) {
                    return Err("entries left of a pivot not reduced".into());
                }
                last_row = Some(i);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_unimodular_is_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=4 {
            for _ in 0..50 {
                assert!(is_unimodular(&random_unimodular(&mut rng, n, 20)));
            }
        }
    }

    #[test]
    fn cheap_criteria_pass() {
        let s = Suite::new(7);
        for id in [7, 9] {
            let o = s.run(id);
            assert_eq!(o.status, Status::Pass, "{}", o.line());
        }
    }

    #[test]
    fn outcome_line_has_no_timing() {
        let o = Suite::new(1).psi_witness();
        assert!(o.line().starts_with("PASS [9]"));
        assert!(!o.line().contains("ms"));
    }
}
