use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use strength_core::determinantal::{hilbert_burch_codim_check, laplace_strength_bound, GenericMatrix};
use strength_core::groebner::io::{parse_polys, parse_ring_spec, parse_shape};
use strength_core::groebner::{
    codimension, ideal_intersection, ideal_quotient, is_regular_sequence_codim, is_regular_sequence_direct, Ideal,
    MonomialOrder,
};
use strength_core::polycore::{parse_poly, Coeff, Field, MultiPoly, Ring};
use strength_core::quadforms::{
    collective_strength_quadrics, minrank_bruteforce, minrank_formula, simultaneous_diagonalize, DiagonalPair,
    Diagonalization, Pencil, QuadraticForm,
};
use strength_core::strengthcert::{
    certify_all, certify_n32_lower, certify_n32_upper_sample, certify_n33, certify_small_r, recheck, Certificate,
    IdealClass, N33Options, DEFAULT_SEED, UPPER_SAMPLES,
};
use strength_core::AlgebraError;

#[derive(Parser)]
#[command(name = "strength", version, about = "Exact strength, minrank and regular-sequence computations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Coefficient field: q or fp:<p>.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Order::Degrevlex)]
    order: Order,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Degrevlex,
}

impl From<Order> for MonomialOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Lex => MonomialOrder::Lex,
            Order::Degrevlex => MonomialOrder::DegRevLex,
        }
    }
}

#[derive(Args, Clone)]
struct Input {
    /// Polynomial file (optional `ring` header, one polynomial per line).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Ring header overriding the file's, e.g. "n=3 field=q".
    #[arg(long)]
    ring: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether the forms of a file form a regular sequence.
    Regseq {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Quadratic form queries.
    Quadric {
        #[arg(value_enum)]
        query: QuadricQuery,
        #[command(flatten)]
        input: Input,
        /// Diagonal entries; for minrank, the second form of (Σ x_i², Σ b_i x_i²).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        diag: Option<Vec<i64>>,
        /// Prime for finite-field scans.
        #[arg(long, default_value_t = 101)]
        p: u32,
    },
    /// Maximal minors of a generic (n+1)×n matrix.
    Minors {
        #[arg(long, default_value = "4x3")]
        matrix: String,
        /// Also compute the codimension of the minor ideal.
        #[arg(long)]
        codim: bool,
    },
    /// Gröbner basis queries.
    Gb {
        #[arg(value_enum)]
        query: GbQuery,
        #[command(flatten)]
        input: Input,
        /// Second ideal file for `intersect`.
        #[arg(long)]
        with: Option<PathBuf>,
        /// Polynomial for `quotient`.
        #[arg(long)]
        by: Option<String>,
    },
    /// Build and verify a certificate.
    Certify {
        #[arg(value_enum)]
        which: Which,
        /// Scan prime for n32-lower.
        #[arg(long, default_value_t = 5)]
        p: u32,
        /// Write the JSON certificate to a file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// n33: run only the three-minor exclusions.
        #[arg(long)]
        no_strengthened: bool,
        /// n33: every ideal of two entries.
        #[arg(long)]
        exhaustive: bool,
        /// n33: extra ideal of entries, e.g. "1,1;1,3" (repeatable).
        #[arg(long = "extra-class")]
        extra_class: Vec<String>,
        /// n32-upper: number of sampled triples.
        #[arg(long, default_value_t = UPPER_SAMPLES)]
        samples: usize,
    },
    /// Rerun a certificate file and compare.
    Recheck {
        file: Option<PathBuf>,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Codim,
    Direct,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuadricQuery {
    Rank,
    Strength,
    Minrank,
    Collective,
}

#[derive(Clone, Copy, ValueEnum)]
enum GbQuery {
    Basis,
    Dim,
    Codim,
    Intersect,
    Quotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    N32Lower,
    N32Upper,
    N33,
    SmallR,
    All,
}

/// Text and JSON renderings of one result; `ok` picks the exit code.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

enum Failure {
    Usage(String),
    Verdict(String),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<Output, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn field_of(cli: &Cli) -> std::result::Result<Option<Field>, Failure> {
    cli.field.as_deref().map(|f| f.parse().map_err(Failure::from)).transpose()
}

fn load(cli: &Cli, input: &Input) -> std::result::Result<(Ring, Vec<MultiPoly>), Failure> {
    let path = input.input.as_ref().ok_or_else(|| usage("--in <file> is required"))?;
    let text = read(path)?;
    let mut ring = input.ring.as_deref().map(parse_ring_spec).transpose()?;
    if let (Some(r), Some(f)) = (ring, field_of(cli)?) {
        ring = Some(r.with_field(f));
    }
    let (ring, polys) = parse_polys(&text, ring)?;
    if polys.is_empty() {
        return Err(usage("input has no polynomials"));
    }
    Ok((ring, polys))
}

fn strings(v: &[Coeff]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn regseq(cli: &Cli, input: &Input, method: Method) -> Outcome {
    let (ring, polys) = load(cli, input)?;
    let codim = codimension(&Ideal::new(ring, polys.clone())?)?;
    let by_codim = matches!(method, Method::Codim | Method::Both).then(|| is_regular_sequence_codim(&polys)).transpose()?;
    let direct = matches!(method, Method::Direct | Method::Both).then(|| is_regular_sequence_direct(&polys)).transpose()?;
    if let (Some(a), Some(b)) = (by_codim, direct) {
        if a != b {
            return Err(Failure::Verdict(format!("codim test says {a}, quotient test says {b}")));
        }
    }
    let regular = by_codim.or(direct).unwrap_or(false);
    Ok(Output {
        text: format!(
            "{} (codim {codim}, {} forms)",
            if regular { "regular" } else { "not regular" },
            polys.len()
        ),
        json: json!({
            "regular": regular,
            "codim": codim,
            "length": polys.len(),
            "codim_test": by_codim,
            "quotient_test": direct,
        }),
        ok: regular,
    })
}

fn quadric(cli: &Cli, query: QuadricQuery, input: &Input, diag: &Option<Vec<i64>>, p: u32) -> Outcome {
    let field = field_of(cli)?.unwrap_or(Field::Rational);
    let forms: Vec<QuadraticForm> = match (diag, &input.input) {
        (Some(d), None) => match query {
            QuadricQuery::Minrank => {
                let dp = DiagonalPair::normalized(field, d)?;
                vec![dp.f1(), dp.f2()]
            }
            _ => vec![QuadraticForm::diagonal_i64(field, d)?],
        },
        (None, Some(_)) => {
            let (_, polys) = load(cli, input)?;
            polys.iter().map(QuadraticForm::from_poly).collect::<Result<_, _>>()?
        }
        _ => return Err(usage("give exactly one of --diag or --in")),
    };
    let scan_field = match forms[0].field() {
        Field::Rational => Field::prime(p)?,
        f => f,
    };
    match query {
        QuadricQuery::Rank | QuadricQuery::Strength => {
            if forms.len() != 1 {
                return Err(usage("rank and strength take a single form"));
            }
            let q = &forms[0];
            let (rank, strength) = (q.rank(), q.strength());
            let value = if matches!(query, QuadricQuery::Rank) { rank as i64 } else { strength };
            Ok(Output {
                text: value.to_string(),
                json: json!({ "rank": rank, "strength": strength, "field": q.field().to_string() }),
                ok: true,
            })
        }
        QuadricQuery::Minrank => {
            if forms.len() != 2 {
                return Err(usage("minrank takes two forms"));
            }
            let scan = minrank_bruteforce(&forms[0].convert(scan_field)?, &forms[1].convert(scan_field)?)?;
            let formula = match simultaneous_diagonalize(&forms[0], &forms[1]) {
                Ok(Diagonalization::Diagonal { pair, .. }) => Some(minrank_formula(&pair)),
                _ => None,
            };
            let best = formula.clone().unwrap_or_else(|| scan.clone());
            let agree = formula.as_ref().map(|f| f.value == scan.value);
            Ok(Output {
                text: format!(
                    "{} (witness {}, {})",
                    best.value,
                    best.witness_strings().join(","),
                    json!(best.method).as_str().unwrap_or_default()
                ),
                json: json!({
                    "minrank": best.value,
                    "witness": best.witness_strings(),
                    "method": best.method,
                    "scan": { "value": scan.value, "witness": scan.witness_strings(), "prime": scan_field.characteristic() },
                    "formula": formula.as_ref().map(|f| f.value),
                    "agree": agree,
                }),
                ok: agree != Some(false),
            })
        }
        QuadricQuery::Collective => {
            let pencil = Pencil::new(forms.iter().map(|q| q.convert(scan_field)).collect::<Result<_, _>>()?)?;
            let cs = collective_strength_quadrics(&pencil)?;
            Ok(Output {
                text: format!("{} (rank {} at {})", cs.value, cs.rank, strings(&cs.witness).join(",")),
                json: json!({
                    "collective_strength": cs.value,
                    "rank": cs.rank,
                    "witness": strings(&cs.witness),
                    "prime": scan_field.characteristic(),
                }),
                ok: true,
            })
        }
    }
}

fn minors(cli: &Cli, matrix: &str, codim: bool) -> Outcome {
    let (rows, cols) = parse_shape(matrix)?;
    let field = field_of(cli)?.unwrap_or(Field::Rational);
    let fam = strength_core::determinantal::maximal_minors(GenericMatrix::new(rows, cols), field)?;
    let bounds = fam
        .minors
        .iter()
        .map(|f| laplace_strength_bound(f, cols).map(|b| b.bound))
        .collect::<Result<Vec<_>, _>>()?;
    let c = if codim { Some(codimension(&fam.ideal())?) } else { None };
    let text = match c {
        Some(c) => format!("{}# codim {c}\n", fam.export()),
        None => fam.export(),
    };
    Ok(Output {
        text: text.trim_end().to_string(),
        json: json!({
            "ring": fam.ring.to_string(),
            "minors": fam.minors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "multidegrees": fam.multidegrees().iter().map(|d| d.as_ref().map(|d| d.label())).collect::<Vec<_>>(),
            "laplace_bounds": bounds,
            "codim": c,
            "hilbert_burch": if codim { Some(hilbert_burch_codim_check(&fam)?) } else { None },
        }),
        ok: true,
    })
}

fn gb(cli: &Cli, query: GbQuery, input: &Input, with: &Option<PathBuf>, by: &Option<String>) -> Outcome {
    let (ring, polys) = load(cli, input)?;
    let ideal = Ideal::new(ring, polys)?;
    let order: MonomialOrder = cli.order.into();
    let listing = |i: &Ideal| i.generators().iter().map(|f| f.to_string()).collect::<Vec<_>>();
    match query {
        GbQuery::Basis => {
            let basis = ideal.groebner(order);
            let els: Vec<String> = basis.elements().iter().map(|f| f.to_string()).collect();
            Ok(Output {
                text: els.join("\n"),
                json: json!({ "order": order.to_string(), "basis": els }),
                ok: true,
            })
        }
        GbQuery::Dim | GbQuery::Codim => {
            let dim = ideal.groebner(order).dimension();
            let codim = ring.nvars() as i64 - dim;
            let value = if matches!(query, GbQuery::Dim) { dim } else { codim };
            Ok(Output {
                text: value.to_string(),
                json: json!({ "dimension": dim, "codimension": codim, "nvars": ring.nvars() }),
                ok: true,
            })
        }
        GbQuery::Intersect => {
            let other = with.as_ref().ok_or_else(|| usage("intersect needs --with <file>"))?;
            let (_, gens) = parse_polys(&read(other)?, Some(ring))?;
            let result = ideal_intersection(&ideal, &Ideal::new(ring, gens)?)?;
            let basis = result.groebner(order).to_ideal();
            Ok(Output {
                text: listing(&basis).join("\n"),
                json: json!({ "intersection": listing(&basis) }),
                ok: true,
            })
        }
        GbQuery::Quotient => {
            let f = by.as_ref().ok_or_else(|| usage("quotient needs --by <polynomial>"))?;
            let f = parse_poly(f, ring)?;
            let result = ideal_quotient(&ideal, &f)?.groebner(order).to_ideal();
            Ok(Output {
                text: listing(&result).join("\n"),
                json: json!({ "quotient": listing(&result) }),
                ok: true,
            })
        }
    }
}

fn parse_class(text: &str) -> std::result::Result<IdealClass, Failure> {
    let bad = || usage(format!("bad --extra-class `{text}` (expected e.g. 1,1;1,3)"));
    let entries = text
        .split(';')
        .map(|e| {
            let (i, j) = e.split_once(',').ok_or_else(bad)?;
            Ok((i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?))
        })
        .collect::<std::result::Result<Vec<(usize, usize)>, Failure>>()?;
    if entries.iter().any(|&(i, j)| !(1..=4).contains(&i) || !(1..=3).contains(&j)) {
        return Err(bad());
    }
    Ok(IdealClass::Custom(entries))
}

fn certificate_text(c: &Certificate) -> String {
    let mut out = format!("{}: {}\n", c.claim, if c.passed { "PASS" } else { "FAIL" });
    for s in &c.subverdicts {
        let kind = match s.kind {
            strength_core::strengthcert::VerdictKind::Machine => "machine",
            strength_core::strengthcert::VerdictKind::Cited => "cited",
        };
        out.push_str(&format!("  [{kind}] {}: {}\n", s.name, if s.passed { "pass" } else { "FAIL" }));
        if !s.passed {
            if let Some(w) = &s.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
        }
    }
    out.trim_end().to_string()
}

#[allow(clippy::too_many_arguments)]
fn certify(
    cli: &Cli,
    which: Which,
    p: u32,
    out: &Option<PathBuf>,
    no_strengthened: bool,
    exhaustive: bool,
    extra: &[String],
    samples: usize,
) -> Outcome {
    let opts = N33Options {
        strengthened: !no_strengthened,
        extra_classes: extra.iter().map(|e| parse_class(e)).collect::<std::result::Result<_, _>>()?,
        exhaustive,
    };
    let certs = match which {
        Which::N32Lower => vec![certify_n32_lower(p, None)?],
        Which::N32Upper => vec![certify_n32_upper_sample(cli.seed, samples)?],
        Which::N33 => vec![certify_n33(&opts)?],
        Which::SmallR => vec![certify_small_r(cli.seed)?],
        Which::All => certify_all(cli.seed)?,
    };
    let json: Value = if certs.len() == 1 {
        serde_json::to_value(&certs[0]).expect("serializable")
    } else {
        serde_json::to_value(&certs).expect("serializable")
    };
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(&json).expect("serializable") + "\n")
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    Ok(Output {
        text: certs.iter().map(certificate_text).collect::<Vec<_>>().join("\n"),
        json,
        ok: certs.iter().all(|c| c.passed),
    })
}

fn recheck_file(path: &PathBuf) -> Outcome {
    let text = read(path)?;
    match recheck(&text) {
        Ok(r) => Ok(Output {
            text: if r.passed {
                format!("{}: reproduced, PASS", r.claim)
            } else {
                format!("{}: FAIL (differs at: {})", r.claim, r.mismatches.join(", "))
            },
            json: json!(r),
            ok: r.passed,
        }),
        Err(e) => Err(Failure::Verdict(format!("certificate rejected: {e}"))),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Regseq { input, method } => regseq(cli, input, *method),
        Command::Quadric { query, input, diag, p } => quadric(cli, *query, input, diag, *p),
        Command::Minors { matrix, codim } => minors(cli, matrix, *codim),
        Command::Gb { query, input, with, by } => gb(cli, *query, input, with, by),
        Command::Certify {
            which,
            p,
            out,
            no_strengthened,
            exhaustive,
            extra_class,
            samples,
        } => certify(cli, *which, *p, out, *no_strengthened, *exhaustive, extra_class, *samples),
        Command::Recheck { file, input } => {
            let path = file.as_ref().or(input.as_ref()).ok_or_else(|| usage("recheck needs a file"))?;
            recheck_file(path)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: bad --threads value");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let mut v = out.json;
                let is_certificate = matches!(cli.command, Command::Certify { .. });
                if let (Value::Object(m), false) = (&mut v, is_certificate) {
                    m.insert("seed".into(), json!(cli.seed));
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verdict(msg)) => {
            if cli.json {
                println!("{}", json!({ "passed": false, "error": msg, "seed": cli.seed }));
            } else {
                println!("FAIL: {msg}");
            }
            ExitCode::from(1)
        }
    }
}
