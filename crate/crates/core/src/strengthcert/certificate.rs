//! Certificates: machine-checked records of the small-`N(r,d)` claims.
//!
//! Each certificate is a list of sub-verdicts computed independently (in
//! parallel) and merged in a fixed order, so the JSON is stable for a fixed
//! seed. [`recheck`] reruns a certificate from its serialized form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::exclusion::{all_coordinate_pairs, exclusion_matrix, IdealClass};
use crate::determinantal::{laplace_strength_bound, GenericMatrix, MinorFamily, SymbolicMatrix};
use crate::error::{AlgebraError, Result};
use crate::groebner::{codimension, dimension, is_regular_sequence_codim, regular_pair_gcd_check, Ideal};
use crate::polycore::{gcd, Coeff, Field, Homogeneity, Matrix, MultiDegree, MultiPoly, Ring, DEFAULT_PRIME};
use crate::quadforms::{strength_from_rank, theorem_n32_report, Pencil, QuadraticForm};
use crate::sampling;

pub const CLAIM_N32_LOWER: &str = "N(3,2) >= 2";
pub const CLAIM_N32_UPPER: &str = "N(3,2) <= 2 (sampled)";
pub const CLAIM_N33: &str = "N(3,3) > 2";
pub const CLAIM_SMALL_R: &str = "N(1,d) = 0 and N(2,d) = 1";

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictKind {
    /// Recomputed by this library.
    Machine,
    /// Taken from the literature, not recomputed.
    Cited,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubVerdict {
    pub name: String,
    pub kind: VerdictKind,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub paper_ref: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Environment {
    pub field: String,
    pub primes: Vec<u32>,
    pub seed: u64,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub claim: String,
    pub passed: bool,
    pub subverdicts: Vec<SubVerdict>,
    pub environment: Environment,
}

impl Certificate {
    fn assemble(claim: &str, subverdicts: Vec<SubVerdict>, environment: Environment) -> Certificate {
        Certificate {
            claim: claim.to_string(),
            passed: subverdicts.iter().all(|s| s.passed),
            subverdicts,
            environment,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| AlgebraError::InvalidInput(format!("certificate: {e}")))
    }

    pub fn subverdict(&self, name: &str) -> Option<&SubVerdict> {
        self.subverdicts.iter().find(|s| s.name == name)
    }

    /// First failing sub-verdict.
    pub fn first_failure(&self) -> Option<&SubVerdict> {
        self.subverdicts.iter().find(|s| !s.passed)
    }
}

fn environment(field: Field, primes: Vec<u32>, seed: u64) -> Environment {
    Environment {
        field: field.to_string(),
        primes,
        seed,
        version: crate::VERSION.to_string(),
    }
}

type Job<'a> = Box<dyn Fn() -> SubVerdict + Send + Sync + 'a>;

/// Run the jobs concurrently, keep their order.
fn run_jobs(jobs: Vec<Job<'_>>) -> Vec<SubVerdict> {
    jobs.par_iter().map(|j| j()).collect()
}

/// A machine sub-verdict; errors become a failure carrying the message.
fn machine(name: &str, paper_ref: &str, check: impl FnOnce() -> Result<(bool, Value)>) -> SubVerdict {
    let (passed, witness) = match check() {
        Ok((p, w)) => (p, w),
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    SubVerdict {
        name: name.to_string(),
        kind: VerdictKind::Machine,
        passed,
        witness: Some(witness),
        paper_ref: paper_ref.to_string(),
    }
}

fn cited(name: &str, paper_ref: &str, statement: &str) -> SubVerdict {
    SubVerdict {
        name: name.to_string(),
        kind: VerdictKind::Cited,
        passed: true,
        witness: Some(json!({ "statement": statement })),
        paper_ref: paper_ref.to_string(),
    }
}

fn strings(v: &[Coeff]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

// ---------------------------------------------------------------------------
// N(3,2) >= 2

fn laplace_subverdict(name: &str, minors: &[MultiPoly], n: usize, expected: usize) -> SubVerdict {
    machine(name, "cofactor expansion along the first column", || {
        let mut bounds = Vec::new();
        let mut ok = true;
        for f in minors {
            let b = laplace_strength_bound(f, n)?;
            ok &= b.bound == Some(expected) && &b.reconstruct(f.ring()) == f;
            bounds.push(b.bound);
        }
        Ok((ok, json!({ "bounds": bounds })))
    })
}

/// Every nonzero vector of `F_p^3` combines the three quadrics into a form of rank exactly 4.
fn rank_scan(forms: &[QuadraticForm], p: u32) -> Result<(bool, Value)> {
    let field = Field::prime(p)?;
    let pencil = Pencil::new(forms.iter().map(|q| q.convert(field)).collect::<Result<_>>()?)?;
    let r = pencil.len();
    let total = (p as u64).pow(r as u32);
    let ranks: Vec<(Vec<Coeff>, usize)> = (1..total)
        .into_par_iter()
        .map(|code| {
            let mut v = vec![field.zero(); r];
            let mut rest = code;
            for slot in (0..r).rev() {
                v[slot] = Coeff::from_i64(field, (rest % p as u64) as i64);
                rest /= p as u64;
            }
            let k = pencil.combination(&v).rank();
            (v, k)
        })
        .collect();
    if let Some((v, k)) = ranks.iter().find(|(_, k)| *k != 4) {
        return Ok((false, json!({ "point": strings(v), "rank": k })));
    }
    Ok((
        true,
        json!({
            "points": ranks.len(),
            "rank": 4,
            "collective_strength": strength_from_rank(4)?,
        }),
    ))
}

/// Over `ℚ[a,b,c]`: all 5×5 minors of `a F1 + b F2 + c F3` vanish and the
/// 4×4 minors cut out only the origin, so the rank is 4 at every nonzero
/// point over the algebraic closure.
fn rank_over_closure(forms: &[QuadraticForm]) -> Result<(bool, Value)> {
    let n = forms[0].n();
    let r = forms.len();
    let ring = Ring::flat(r, Field::Rational);
    let entries: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    forms.iter().enumerate().fold(MultiPoly::zero(ring), |acc, (k, q)| {
                        &acc + &MultiPoly::var(ring, k).scale(q.gram().get(i, j))
                    })
                })
                .collect()
        })
        .collect();
    let sym = SymbolicMatrix::new(ring, entries)?;
    let minors = |size: usize| -> Result<Vec<MultiPoly>> {
        let subsets = subsets(n, size);
        let mut out = Vec::new();
        for rows in &subsets {
            for cols in &subsets {
                let e: Vec<Vec<MultiPoly>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| sym.entries[i][j].clone()).collect())
                    .collect();
                let d = crate::determinantal::determinant_laplace(&SymbolicMatrix::new(ring, e)?)?;
                if !d.is_zero() {
                    out.push(d.monic());
                }
            }
        }
        out.sort_by_key(|f| f.to_string());
        out.dedup();
        Ok(out)
    };
    let five = if n >= 5 { minors(5)? } else { vec![] };
    let four = minors(4)?;
    let dim = if four.is_empty() {
        r as i64
    } else {
        dimension(&Ideal::new(ring, four.clone())?)
    };
    Ok((
        five.is_empty() && dim == 0,
        json!({
            "nonzero_5x5_minors": five.len(),
            "distinct_4x4_minors": four.len(),
            "dimension_of_4x4_minor_locus": dim,
        }),
    ))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The three maximal minors of the generic 3×2 matrix are not regular but
/// have collective strength 1. `family` replaces the minors (same ring) for
/// negative tests.
pub fn certify_n32_lower(p: u32, family: Option<Vec<MultiPoly>>) -> Result<Certificate> {
    let scan_field = Field::prime(p)?;
    if p == 2 {
        return Err(AlgebraError::CharacteristicTwo);
    }
    let fam = MinorFamily::generic(2, Field::Rational);
    let minors = match family {
        Some(f) => {
            if f.len() != 3 || f.iter().any(|g| g.ring() != fam.ring) {
                return Err(AlgebraError::InvalidInput("override must be three forms in the 3x2 ring".into()));
            }
            f
        }
        None => fam.minors.clone(),
    };
    let forms = minors.iter().map(QuadraticForm::from_poly).collect::<Result<Vec<_>>>()?;

    let jobs: Vec<Job> = vec![
        Box::new(|| {
            machine("codim-of-minors", "the minors of a generic 3x2 matrix are not a regular sequence", || {
                let c = codimension(&Ideal::new(fam.ring, minors.clone())?)?;
                Ok((c == 2, json!({ "codim": c, "generators": 3, "regular": c == 3 })))
            })
        }),
        Box::new(|| cited("codim-criterion", "unmixedness criterion", "homogeneous forms are regular iff codim equals their number")),
        Box::new(|| laplace_subverdict("laplace-strength", &minors, 2, 1)),
        Box::new(|| machine("rank-scan", "echelon computation of the combined Gram matrix", || rank_scan(&forms, p))),
        Box::new(|| machine("rank-over-closure", "echelon computation of the combined Gram matrix", || rank_over_closure(&forms))),
    ];
    let subverdicts = run_jobs(jobs);
    Ok(Certificate::assemble(
        CLAIM_N32_LOWER,
        subverdicts,
        environment(scan_field, vec![p], DEFAULT_SEED),
    ))
}

// ---------------------------------------------------------------------------
// sampled N(3,2) <= 2

pub const UPPER_SAMPLES: usize = 3;
pub const UPPER_PRIME: u32 = 101;

/// Random triples `f1 = Tᵀ T`, `f2 = Tᵀ diag(b) T`, `f3` random in six
/// variables, each run through the full regularity chain.
pub fn certify_n32_upper_sample(seed: u64, samples: usize) -> Result<Certificate> {
    let q = Field::Rational;
    let n = 6;
    let mut rng = sampling::rng(seed);
    let mut triples = Vec::new();
    for _ in 0..samples {
        let t = loop {
            let rows: Vec<Vec<Coeff>> = (0..n)
                .map(|_| (0..n).map(|_| sampling::coeff(q, 1, &mut rng)).collect())
                .collect();
            let t = Matrix::from_rows(q, rows)?;
            if t.rank() == n {
                break t;
            }
        };
        let mut b: Vec<i64> = (1..=9).collect();
        rand::seq::SliceRandom::shuffle(&mut b[..], &mut rng);
        b.truncate(n);
        let f1 = QuadraticForm::diagonal_i64(q, &vec![1; n])?.congruent(&t)?;
        let f2 = QuadraticForm::diagonal_i64(q, &b)?.congruent(&t)?;
        let ring = Ring::flat(n, q);
        let f3 = QuadraticForm::from_poly(&sampling::form(ring, 2, 0.5, &mut rng))?;
        triples.push((f1, f2, f3, b));
    }
    let jobs: Vec<Job> = triples
        .iter()
        .enumerate()
        .map(|(k, (f1, f2, f3, b))| {
            Box::new(move || {
                machine(&format!("sample-{}", k + 1), "three quadrics of collective strength at least 2 are regular", || {
                    let rep = theorem_n32_report(f1, f2, f3, UPPER_PRIME)?;
                    let ring = Ring::flat(n, q);
                    Ok((
                        rep.consistent,
                        json!({
                            "f1": f1.to_poly(ring)?.to_string(),
                            "f2": f2.to_poly(ring)?.to_string(),
                            "f3": f3.to_poly(ring)?.to_string(),
                            "b": b,
                            "report": rep,
                        }),
                    ))
                })
            }) as Job
        })
        .collect();
    let mut subverdicts = run_jobs(jobs);
    subverdicts.push(cited(
        "prime-implies-regular",
        "a pencil whose singular locus has codim above 4 generates a prime ideal",
        "prime ideal of two forms and a third form outside it give a regular sequence",
    ));
    Ok(Certificate::assemble(
        CLAIM_N32_UPPER,
        subverdicts,
        environment(q, vec![UPPER_PRIME], seed),
    ))
}

// ---------------------------------------------------------------------------
// N(3,3) > 2

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N33Options {
    /// Also exclude strength-1 combinations of all four minors.
    pub strengthened: bool,
    pub extra_classes: Vec<IdealClass>,
    /// Run every ideal of two matrix entries on the four-minor family.
    pub exhaustive: bool,
}

impl Default for N33Options {
    fn default() -> Self {
        N33Options {
            strengthened: true,
            extra_classes: vec![],
            exhaustive: false,
        }
    }
}

fn exclusion_subverdict(name: &str, family: &[MultiPoly], class: &IdealClass) -> SubVerdict {
    machine(name, "reduction modulo the normal-form ideals", || {
        let rep = exclusion_matrix(family, class)?;
        Ok((
            rep.excluded(),
            json!({
                "ideal": class.to_string(),
                "entries": class.entries(),
                "rows": rep.rows(),
                "kernel_dim": rep.kernel_dim(),
                "monomials": rep.monomial_names(family[0].ring()),
            }),
        ))
    })
}

pub fn certify_n33(opts: &N33Options) -> Result<Certificate> {
    let q = MinorFamily::generic(3, Field::Rational);
    let fp = Field::prime(DEFAULT_PRIME)?;
    let three = q.minors[..3].to_vec();
    let grading = GenericMatrix::new(4, 3).grading();

    let mut jobs: Vec<Job> = vec![
        Box::new(|| {
            machine("codim-f1-f2-f3", "three maximal minors of a generic 4x3 matrix are not regular", || {
                let fam = q.with_field(fp)?;
                let c = codimension(&Ideal::new(fam.ring, fam.minors[..3].to_vec())?)?;
                Ok((c == 2, json!({ "codim": c, "field": fp.to_string(), "regular": c == 3 })))
            })
        }),
        Box::new(|| laplace_subverdict("laplace-strength", &q.minors, 3, 2)),
        Box::new(|| {
            machine("column-degrees", "the minors are multihomogeneous for the column grading", || {
                let ones = MultiDegree::ones(3);
                let mut labels = Vec::new();
                let mut ok = true;
                for f in &q.minors {
                    match grading.multidegree(f)? {
                        Homogeneity::Homogeneous(d) => {
                            ok &= d == ones;
                            labels.push(d.label());
                        }
                        _ => {
                            ok = false;
                            labels.push("mixed".into());
                        }
                    }
                }
                Ok((ok, json!({ "multidegrees": labels })))
            })
        }),
        Box::new(|| {
            cited(
                "column-homogenization",
                "a strength-one decomposition may be taken column-homogeneous",
                "if a combination equals ab + cd then it equals such an expression with a, c linear forms homogeneous in the column grading",
            )
        }),
        Box::new(|| {
            cited(
                "linear-pair-normal-form",
                "pairs of column-homogeneous linear forms up to row and column changes",
                "two independent column-homogeneous linear forms are equivalent to (x11,x21), (x11,x12) or (x11,x22)",
            )
        }),
    ];
    for class in IdealClass::representatives() {
        let three = three.clone();
        jobs.push(Box::new(move || exclusion_subverdict(&format!("exclusion-{}", class.name()), &three, &class)));
    }
    if opts.strengthened {
        for class in IdealClass::representatives() {
            let all = q.minors.clone();
            jobs.push(Box::new(move || {
                exclusion_subverdict(&format!("exclusion-4minor-{}", class.name()), &all, &class)
            }));
        }
    }
    for class in &opts.extra_classes {
        let three = three.clone();
        jobs.push(Box::new(move || exclusion_subverdict(&format!("exclusion-extra-{}", class.name()), &three, class)));
    }
    if opts.exhaustive {
        jobs.push(Box::new(|| {
            machine("exclusion-exhaustive", "symmetry reduction to the normal-form ideals", || {
                let classes = all_coordinate_pairs(4, 3);
                let reports = classes
                    .par_iter()
                    .map(|c| exclusion_matrix(&q.minors, c))
                    .collect::<Result<Vec<_>>>()?;
                let three_fail: Vec<String> = classes
                    .par_iter()
                    .map(|c| exclusion_matrix(&three, c).map(|r| (c, r.excluded())))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(c, _)| c.to_string())
                    .collect();
                let failures: Vec<String> =
                    reports.iter().filter(|r| !r.excluded()).map(|r| r.class.to_string()).collect();
                Ok((
                    failures.is_empty(),
                    json!({
                        "classes": classes.len(),
                        "four_minor_failures": failures,
                        "three_minor_failures": three_fail,
                    }),
                ))
            })
        }));
    }
    let subverdicts = run_jobs(jobs);
    Ok(Certificate::assemble(
        CLAIM_N33,
        subverdicts,
        environment(Field::Rational, vec![DEFAULT_PRIME], DEFAULT_SEED),
    ))
}

/// Options recorded in an `N(3,3)` certificate's sub-verdict names.
fn n33_options_of(cert: &Certificate) -> Result<N33Options> {
    let mut opts = N33Options {
        strengthened: false,
        extra_classes: vec![],
        exhaustive: false,
    };
    for s in &cert.subverdicts {
        if s.name.starts_with("exclusion-4minor-") {
            opts.strengthened = true;
        } else if s.name == "exclusion-exhaustive" {
            opts.exhaustive = true;
        } else if s.name.starts_with("exclusion-extra-") {
            let entries: Vec<(usize, usize)> = s
                .witness
                .as_ref()
                .and_then(|w| w.get("entries"))
                .and_then(|e| serde_json::from_value(e.clone()).ok())
                .ok_or_else(|| AlgebraError::InvalidInput(format!("{}: missing entries", s.name)))?;
            opts.extra_classes.push(IdealClass::Custom(entries));
        }
    }
    Ok(opts)
}

// ---------------------------------------------------------------------------
// N(1,d) = 0, N(2,d) = 1

pub const SMALL_R_PAIRS: usize = 100;
const SMALL_R_PRIME: u32 = 7;
const SMALL_R_VARS: usize = 4;

fn random_degree<R: rand::Rng>(rng: &mut R) -> u32 {
    rng.gen_range(1..=2)
}

pub fn certify_small_r(seed: u64) -> Result<Certificate> {
    let field = Field::prime(SMALL_R_PRIME)?;
    let ring = Ring::flat(SMALL_R_VARS, field);
    let mut rng = sampling::rng(seed);

    let singles: Vec<MultiPoly> = (0..20)
        .map(|k| sampling::form(ring, 1 + k % 3, 0.5, &mut rng))
        .collect();
    let mut common = Vec::new();
    for _ in 0..SMALL_R_PAIRS {
        let g = sampling::linear_form(ring, &mut rng);
        let (d1, d2) = (random_degree(&mut rng), random_degree(&mut rng));
        let h1 = sampling::form(ring, d1, 0.5, &mut rng);
        let h2 = sampling::form(ring, d2, 0.5, &mut rng);
        common.push((&g * &h1, &g * &h2));
    }
    let mut coprime = Vec::new();
    while coprime.len() < SMALL_R_PAIRS {
        let (d1, d2) = (random_degree(&mut rng), random_degree(&mut rng));
        let f1 = sampling::form(ring, d1, 0.6, &mut rng);
        let f2 = sampling::form(ring, d2, 0.6, &mut rng);
        if gcd(&f1, &f2).is_one() {
            coprime.push((f1, f2));
        }
    }
    let powers: Vec<(MultiPoly, MultiPoly)> = (1..=5)
        .map(|d| (MultiPoly::var(ring, 0).pow(d), MultiPoly::var(ring, 1).pow(d)))
        .collect();

    let pair_check = |name: &'static str, pairs: &[(MultiPoly, MultiPoly)], expect: bool| -> SubVerdict {
        machine(name, "gcd criterion for two forms", || {
            let reports = pairs
                .par_iter()
                .map(|(a, b)| regular_pair_gcd_check(a, b))
                .collect::<Result<Vec<_>>>()?;
            let bad = pairs
                .iter()
                .zip(&reports)
                .find(|(_, r)| !r.agree || r.codim_regular != expect);
            Ok(match bad {
                Some(((a, b), r)) => (
                    false,
                    json!({ "f1": a.to_string(), "f2": b.to_string(), "report": r }),
                ),
                None => (true, json!({ "pairs": pairs.len(), "regular": expect, "agree": true })),
            })
        })
    };
    let jobs: Vec<Job> = vec![
        Box::new(|| {
            machine("single-forms", "a single nonzero form is regular", || {
                for f in &singles {
                    if !is_regular_sequence_codim(std::slice::from_ref(f))? {
                        return Ok((false, json!({ "form": f.to_string() })));
                    }
                }
                Ok((true, json!({ "forms": singles.len(), "codim": 1 })))
            })
        }),
        Box::new(|| pair_check("common-factor-pairs", &common, false)),
        Box::new(|| pair_check("coprime-pairs", &coprime, true)),
        Box::new(|| pair_check("power-pairs", &powers, true)),
        Box::new(|| cited("codim-criterion", "unmixedness criterion", "homogeneous forms are regular iff codim equals their number")),
    ];
    let subverdicts = run_jobs(jobs);
    Ok(Certificate::assemble(
        CLAIM_SMALL_R,
        subverdicts,
        environment(field, vec![SMALL_R_PRIME], seed),
    ))
}

// ---------------------------------------------------------------------------

pub fn certify_all(seed: u64) -> Result<Vec<Certificate>> {
    Ok(vec![
        certify_n32_lower(5, None)?,
        certify_n32_upper_sample(seed, UPPER_SAMPLES)?,
        certify_n33(&N33Options::default())?,
        certify_small_r(seed)?,
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecheckReport {
    pub claim: String,
    /// The rerun passes and reproduces the file exactly.
    pub passed: bool,
    pub reproduced: bool,
    /// Names of sub-verdicts whose rerun differs (or are missing on one side).
    pub mismatches: Vec<String>,
}

/// Rerun a certificate from its JSON and compare with the recorded result.
pub fn recheck(text: &str) -> Result<RecheckReport> {
    let cert = Certificate::from_json(text)?;
    let prime = |k: usize| {
        cert.environment
            .primes
            .get(k)
            .copied()
            .ok_or_else(|| AlgebraError::InvalidInput("environment lists no prime".into()))
    };
    let fresh = match cert.claim.as_str() {
        CLAIM_N32_LOWER => certify_n32_lower(prime(0)?, None)?,
        CLAIM_N32_UPPER => {
            let samples = cert.subverdicts.iter().filter(|s| s.name.starts_with("sample-")).count();
            certify_n32_upper_sample(cert.environment.seed, samples)?
        }
        CLAIM_N33 => certify_n33(&n33_options_of(&cert)?)?,
        CLAIM_SMALL_R => certify_small_r(cert.environment.seed)?,
        other => return Err(AlgebraError::InvalidInput(format!("unknown claim `{other}`"))),
    };
    let mut mismatches: Vec<String> = Vec::new();
    for s in &cert.subverdicts {
        if fresh.subverdict(&s.name) != Some(s) {
            mismatches.push(s.name.clone());
        }
    }
    for s in &fresh.subverdicts {
        if cert.subverdict(&s.name).is_none() {
            mismatches.push(s.name.clone());
        }
    }
    let reproduced = fresh == cert;
    if !reproduced && mismatches.is_empty() {
        mismatches.push("environment".into());
    }
    Ok(RecheckReport {
        claim: cert.claim.clone(),
        passed: reproduced && fresh.passed,
        reproduced,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly;

    #[test]
    fn n32_lower_default() {
        let c = certify_n32_lower(5, None).unwrap();
        assert!(c.passed, "{}", c.to_json());
        let scan = c.subverdict("rank-scan").unwrap();
        assert_eq!(scan.witness.as_ref().unwrap()["points"], 124);
    }

    #[test]
    fn n32_lower_over_f7() {
        assert!(certify_n32_lower(7, None).unwrap().passed);
    }

    #[test]
    fn n32_lower_tampered() {
        let fam = MinorFamily::generic(2, Field::Rational);
        let mut f = fam.minors.clone();
        f[2] = parse_poly("x1_1^2", fam.ring).unwrap();
        let c = certify_n32_lower(5, Some(f)).unwrap();
        assert!(!c.passed);
        let scan = c.subverdict("rank-scan").unwrap();
        assert!(!scan.passed);
        assert_eq!(scan.witness.as_ref().unwrap()["point"], json!(["0", "0", "1"]));
        assert_eq!(scan.witness.as_ref().unwrap()["rank"], 1);
    }

    #[test]
    fn n33_default_and_exhaustive() {
        let c = certify_n33(&N33Options::default()).unwrap();
        assert!(c.passed, "{}", c.to_json());
        assert!(c.subverdict("exclusion-4minor-skew").unwrap().passed);
        let opts = N33Options {
            strengthened: false,
            extra_classes: vec![IdealClass::Custom(vec![(1, 1), (1, 3)])],
            exhaustive: true,
        };
        let c = certify_n33(&opts).unwrap();
        assert!(c.passed);
        assert_eq!(c.subverdict("exclusion-exhaustive").unwrap().witness.as_ref().unwrap()["classes"], 66);
        assert_eq!(n33_options_of(&c).unwrap(), opts);
    }

    #[test]
    fn n32_upper_sample() {
        let c = certify_n32_upper_sample(DEFAULT_SEED, 2).unwrap();
        assert!(c.passed, "{}", c.to_json());
    }

    #[test]
    fn small_r_default() {
        let c = certify_small_r(DEFAULT_SEED).unwrap();
        assert!(c.passed, "{}", c.to_json());
    }

    #[test]
    fn json_round_trip() {
        let c = certify_small_r(1).unwrap();
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
        let r = recheck(&c.to_json()).unwrap();
        assert!(r.passed && r.mismatches.is_empty());
        let tampered = c.to_json().replacen("\"passed\": true", "\"passed\": false", 1);
        assert!(!recheck(&tampered).unwrap().passed);
    }

    #[test]
    fn n33_options_are_recovered() {
        let opts = N33Options {
            strengthened: true,
            extra_classes: vec![IdealClass::Custom(vec![(1, 1), (1, 3)])],
            exhaustive: false,
        };
        let cert = Certificate::assemble(
            CLAIM_N33,
            vec![
                exclusion_subverdict("exclusion-4minor-skew", &MinorFamily::generic(3, Field::Rational).minors, &IdealClass::Skew),
                exclusion_subverdict(
                    "exclusion-extra-custom",
                    &MinorFamily::generic(3, Field::Rational).minors[..3],
                    &opts.extra_classes[0],
                ),
            ],
            environment(Field::Rational, vec![], 0),
        );
        assert_eq!(n33_options_of(&cert).unwrap(), opts);
    }
}
