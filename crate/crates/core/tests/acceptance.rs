//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p strength-core --test acceptance`. The process
//! exits 0 unless `ACCEPTANCE_STRICT` is set, in which case any FAIL makes it
//! exit 1.

use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use strength_core::determinantal::{hilbert_burch_codim_check, laplace_strength_bound, MinorFamily};
use strength_core::groebner::{codimension, is_regular_sequence_codim, is_regular_sequence_direct, Ideal, MonomialOrder};
use strength_core::polycore::{parse_poly, Field, GradingSpec, Matrix, MultiPoly, Ring, DEFAULT_PRIME};
use strength_core::quadforms::{strength_from_rank, verify_jacobian_minrank, DiagonalPair, QuadraticForm};
use strength_core::sampling::{self, SeededRng};
use strength_core::strengthcert::{
    certify_n32_lower, certify_n33, certify_small_r, exclusion_matrix, grading_constraint_check, search_strength,
    GradedDecomposition, IdealClass, N33Options, SearchField, SmallField, DEFAULT_SEED,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn criterion1() -> Outcome {
    let q = Field::Rational;
    let fam = MinorFamily::generic(2, q);
    let (codim, t_codim) = timed(|| codimension(&fam.ideal()).unwrap());
    let (cert, t_total) = timed(|| certify_n32_lower(5, None).unwrap());
    let scan = cert.subverdict("rank-scan").and_then(|s| s.witness.clone()).unwrap_or_default();
    let points = scan["points"].as_u64().unwrap_or(0);
    let passed = cert.passed
        && codim == 2
        && points == 124
        && scan["rank"] == 4
        && t_codim < Duration::from_secs(5)
        && t_total < Duration::from_secs(10);
    Outcome {
        passed,
        detail: format!(
            "certificate passed={}, codim={codim} ({}, limit 5s), {points} points of rank 4, total {} (limit 10s)",
            cert.passed,
            secs(t_codim),
            secs(t_total)
        ),
    }
}

fn criterion2() -> Outcome {
    let q = MinorFamily::generic(3, Field::Rational);
    let fp = q.with_field(Field::Prime(DEFAULT_PRIME)).unwrap();
    let (codim, t_codim) = timed(|| codimension(&Ideal::new(fp.ring, fp.minors[..3].to_vec()).unwrap()).unwrap());
    let (bounds, t_laplace) = timed(|| {
        q.minors
            .iter()
            .map(|f| laplace_strength_bound(f, 3).unwrap().bound)
            .collect::<Vec<_>>()
    });
    let (reports, t_excl) = timed(|| {
        IdealClass::representatives()
            .iter()
            .map(|c| exclusion_matrix(&q.minors[..3], c).unwrap())
            .collect::<Vec<_>>()
    });
    let (cert, t_cert) = timed(|| certify_n33(&N33Options::default()).unwrap());
    let four_minor = ["parallel-rows", "same-column", "skew"]
        .iter()
        .all(|n| cert.subverdict(&format!("exclusion-4minor-{n}")).map(|s| s.passed).unwrap_or(false));
    let rows: Vec<String> = reports.iter().map(|r| format!("{}:{}", r.class.name(), r.rows())).collect();
    let rows_ok = reports.iter().all(|r| r.rows() == 10);
    let kernels_ok = reports.iter().all(|r| r.excluded());
    let passed = cert.passed
        && codim == 2
        && t_codim < Duration::from_secs(60)
        && bounds.iter().all(|b| *b == Some(2))
        && t_laplace < Duration::from_secs(1)
        && rows_ok
        && kernels_ok
        && t_excl < Duration::from_secs(1)
        && four_minor;
    Outcome {
        passed,
        detail: format!(
            "certificate passed={} ({}), codim={codim} ({}, limit 60s), laplace bounds {:?} ({}, limit 1s), \
             exclusion rows [{}] (required 10 each), kernels trivial={kernels_ok} ({}, limit 1s), 4-minor variant={four_minor}",
            cert.passed,
            secs(t_cert),
            secs(t_codim),
            bounds,
            secs(t_laplace),
            rows.join(", "),
            secs(t_excl)
        ),
    }
}

fn random_pair(rng: &mut SeededRng) -> DiagonalPair {
    let n = rng.gen_range(1..=5);
    loop {
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        if a.iter().zip(&b).all(|(x, y)| *x != 0 || *y != 0) {
            return DiagonalPair::from_i64(Field::Rational, &a, &b).unwrap();
        }
    }
}

fn criterion3() -> Outcome {
    let mut rng = sampling::rng(DEFAULT_SEED);
    let pairs: Vec<DiagonalPair> = (0..50).map(|_| random_pair(&mut rng)).collect();
    let (reports, t) = timed(|| {
        pairs
            .par_iter()
            .map(|dp| verify_jacobian_minrank(dp, 101).unwrap())
            .collect::<Vec<_>>()
    });
    let failures: Vec<String> = pairs
        .iter()
        .zip(&reports)
        .filter(|(_, r)| !r.passed)
        .map(|(dp, r)| format!("a={:?} b={:?} -> {r:?}", dp.a, dp.b))
        .collect();
    Outcome {
        passed: failures.is_empty() && t < Duration::from_secs(120),
        detail: format!(
            "{} pairs, {} disagreements{} ({}, limit 120s)",
            pairs.len(),
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default(),
            secs(t)
        ),
    }
}

/// Upper-triangular coefficient index of `x_a x_b`, `a ≤ b`, matching the search.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * n - a * (a + 1) / 2 + b
}

fn criterion4() -> Outcome {
    let n = 4;
    let slots = n * (n + 1) / 2;
    let p = 3usize;
    let total = p.pow(slots as u32);
    let f3 = Field::Prime(3);
    let ring = Ring::flat(n, f3);
    let k9 = SmallField::new(3, SearchField::Quadratic).unwrap();
    let k3 = SmallField::new(3, SearchField::Base).unwrap();
    let ((closure_bad, base_bad), t) = timed(|| {
        let results: Vec<(bool, bool)> = (0..total)
            .into_par_iter()
            .map(|code| {
                let mut target = vec![0u8; slots];
                let mut rest = code;
                for x in target.iter_mut() {
                    *x = (rest % p) as u8;
                    rest /= p;
                }
                let mut terms = Vec::new();
                for a in 0..n {
                    for b in a..n {
                        let c = target[pair_index(n, a, b)];
                        if c != 0 {
                            let mut e = vec![0u32; n];
                            e[a] += 1;
                            e[b] += 1;
                            terms.push((
                                strength_core::polycore::Monomial::from_exponents(e),
                                strength_core::Coeff::from_i64(f3, c as i64),
                            ));
                        }
                    }
                }
                let f = MultiPoly::from_terms(ring, terms);
                let rank = QuadraticForm::from_poly(&f).unwrap().rank() as i64;
                let law = strength_from_rank(rank).unwrap();
                let closure = search_strength(&k9, n, &target, 3).value;
                let base = search_strength(&k3, n, &target, 3).value;
                (closure != Some(law), base != Some(law))
            })
            .collect();
        (
            results.iter().filter(|r| r.0).count(),
            results.iter().filter(|r| r.1).count(),
        )
    });
    Outcome {
        passed: closure_bad == 0 && t < Duration::from_secs(300),
        detail: format!(
            "all {total} forms in 4 variables over F_3: {closure_bad} mismatches with decompositions over F_9; \
             (over F_3 itself {base_bad} anisotropic forms need one more product) ({}, limit 300s)",
            secs(t)
        ),
    }
}

fn named_systems() -> Vec<Vec<MultiPoly>> {
    let r3 = Ring::flat(3, Field::Rational);
    let p = |r: Ring, s: &str| parse_poly(s, r).unwrap();
    let m32 = MinorFamily::generic(2, Field::Rational);
    let m43 = MinorFamily::generic(3, Field::Prime(DEFAULT_PRIME));
    vec![
        vec![p(r3, "x1"), p(r3, "x2"), p(r3, "x3")],
        vec![p(r3, "x1^3"), p(r3, "x2^3")],
        vec![p(r3, "x1*x2"), p(r3, "x1*x3")],
        m32.minors.clone(),
        m32.minors[..2].to_vec(),
        m43.minors[..2].to_vec(),
        m43.minors[..3].to_vec(),
    ]
}

fn criterion5() -> Outcome {
    let mut rng = sampling::rng(DEFAULT_SEED ^ 5);
    let f7 = Field::Prime(7);
    let mut systems: Vec<Vec<MultiPoly>> = (0..100)
        .map(|_| {
            let r = Ring::flat(rng.gen_range(1..=4), f7);
            let k = rng.gen_range(1..=r.nvars().min(3));
            (0..k).map(|_| sampling::form(r, rng.gen_range(1..=2), 0.5, &mut rng)).collect()
        })
        .collect();
    systems.extend(named_systems());
    let (verdicts, t) = timed(|| {
        systems
            .par_iter()
            .map(|s| (is_regular_sequence_codim(s).unwrap(), is_regular_sequence_direct(s).unwrap()))
            .collect::<Vec<_>>()
    });
    let disagreements = verdicts.iter().filter(|(a, b)| a != b).count();
    let regular = verdicts.iter().filter(|(a, _)| *a).count();
    Outcome {
        passed: disagreements == 0 && t < Duration::from_secs(300),
        detail: format!(
            "{} systems ({} regular), {disagreements} disagreements ({}, limit 300s)",
            systems.len(),
            regular,
            secs(t)
        ),
    }
}

fn criterion6() -> Outcome {
    let (cert, t) = timed(|| certify_small_r(DEFAULT_SEED).unwrap());
    let count = |name: &str| {
        cert.subverdict(name)
            .and_then(|s| s.witness.as_ref())
            .and_then(|w| w["pairs"].as_u64())
            .unwrap_or(0)
    };
    let (common, coprime) = (count("common-factor-pairs"), count("coprime-pairs"));
    Outcome {
        passed: cert.passed && common == 100 && coprime == 100 && t < Duration::from_secs(120),
        detail: format!(
            "certificate passed={}, {common} common-factor pairs non-regular, {coprime} coprime pairs regular ({}, limit 120s)",
            cert.passed,
            secs(t)
        ),
    }
}

fn criterion7() -> Outcome {
    let fp = Field::Prime(DEFAULT_PRIME);
    let (checks, t) = timed(|| {
        vec![
            ("3x2 over Q", hilbert_burch_codim_check(&MinorFamily::generic(2, Field::Rational)).unwrap()),
            ("3x2 over F_32003", hilbert_burch_codim_check(&MinorFamily::generic(2, fp)).unwrap()),
            ("4x3 over F_32003", hilbert_burch_codim_check(&MinorFamily::generic(3, fp)).unwrap()),
        ]
    });
    let all = checks.iter().all(|(_, ok)| *ok);
    let list: Vec<String> = checks.iter().map(|(n, ok)| format!("{n}: {}", if *ok { "codim 2" } else { "wrong codim" })).collect();
    Outcome {
        passed: all && t < Duration::from_secs(90),
        detail: format!("{} ({}, limit 90s)", list.join("; "), secs(t)),
    }
}

fn invertible(rng: &mut SeededRng, field: Field, n: usize, bound: i64) -> Matrix {
    loop {
        let rows = (0..n)
            .map(|_| (0..n).map(|_| sampling::coeff(field, bound, rng)).collect())
            .collect();
        let m = Matrix::from_rows(field, rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

fn criterion8() -> Outcome {
    let seeds: Vec<u64> = (0..40).map(|k| DEFAULT_SEED + k).collect();
    let (failures, t) = timed(|| {
        let mut fails: Vec<String> = Vec::new();
        // S-polynomial certificates
        for &s in &seeds {
            let mut rng = sampling::rng(s);
            let field = if s % 2 == 0 { Field::Rational } else { Field::Prime(7) };
            let r = Ring::flat(rng.gen_range(2..=4), field);
            let gens = (0..rng.gen_range(1..=3))
                .map(|_| sampling::form(r, rng.gen_range(1..=3), 0.5, &mut rng))
                .collect();
            let i = Ideal::new(r, gens).unwrap();
            for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
                if !i.groebner(order).verify_s_pairs() {
                    fails.push(format!("s-pairs seed {s}"));
                }
            }
        }
        // component-sum reconstruction
        let g = GradingSpec::columns(4, 3);
        for &s in &seeds {
            let mut rng = sampling::rng(s);
            let r = Ring::matrix(4, 3, Field::Rational);
            let f = sampling::poly(r, 3, 0.02, &mut rng);
            let total = g.components(&f).values().fold(MultiPoly::zero(r), |acc, p| &acc + p);
            if total != f {
                fails.push(format!("components seed {s}"));
            }
            let a = sampling::linear_form(r, &mut rng);
            let b = sampling::form(r, 2, 0.05, &mut rng);
            let c = sampling::linear_form(r, &mut rng);
            let d = sampling::form(r, 2, 0.05, &mut rng);
            let dec = GradedDecomposition::from_factors(g.clone(), &a, &b, &c, &d).unwrap();
            let check = grading_constraint_check(&dec);
            if check.passed && dec.diagonal_part() != dec.product() {
                fails.push(format!("reconstruction seed {s}"));
            }
        }
        // congruence invariance of rank
        for &s in &seeds {
            let mut rng = sampling::rng(s);
            let field = if s % 2 == 0 { Field::Rational } else { Field::Prime(101) };
            let n = rng.gen_range(1..=5);
            let q = QuadraticForm::from_poly(&sampling::form(Ring::flat(n, field), 2, 0.5, &mut rng)).unwrap();
            for _ in 0..20 {
                let t = invertible(&mut rng, field, n, 3);
                if q.congruent(&t).unwrap().rank() != q.rank() {
                    fails.push(format!("congruence seed {s}"));
                }
            }
        }
        // exclusion kernels under re-mixing
        let fam = MinorFamily::generic(3, Field::Rational);
        for &s in &seeds[..10] {
            let mut rng = sampling::rng(s);
            let mix = invertible(&mut rng, Field::Rational, 3, 3);
            let mixed: Vec<MultiPoly> = (0..3)
                .map(|k| (0..3).fold(MultiPoly::zero(fam.ring), |acc, j| &acc + &fam.minors[j].scale(mix.get(j, k))))
                .collect();
            for class in IdealClass::representatives() {
                let a = exclusion_matrix(&fam.minors[..3], &class).unwrap().kernel_dim();
                let b = exclusion_matrix(&mixed, &class).unwrap().kernel_dim();
                if a != b {
                    fails.push(format!("re-mixing seed {s} {}", class.name()));
                }
            }
        }
        fails
    });
    Outcome {
        passed: failures.is_empty() && t < Duration::from_secs(300),
        detail: format!(
            "{} seeded runs per suite, {} failures{} ({}, limit 300s)",
            seeds.len(),
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default(),
            secs(t)
        ),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("N(3,2) >= 2 certificate", criterion1),
        ("N(3,3) > 2 certificate", criterion2),
        ("Jacobian codim = n - max multiplicity = minrank", criterion3),
        ("rank-strength law for quadrics", criterion4),
        ("quotient vs codim regular-sequence tests", criterion5),
        ("gcd criterion for one and two forms", criterion6),
        ("maximal-minor ideals have codim 2", criterion7),
        ("property suites", criterion8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        if !out.passed {
            failed += 1;
        }
        println!("{} criterion {}: {name}: {}", if out.passed { "PASS" } else { "FAIL" }, k + 1, out.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
