use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};

use symdec::complexes::{level_2cm_check, sd_h, HVector, Matroid};
use symdec::decompose::{
    decompose_i, decompose_r, is_alternatingly_increasing, DecompositionKind,
};
use symdec::error::Error;
use symdec::families::{colored_derangement, colored_eulerian, derangement, eulerian, typeb};
use symdec::operators::{
    deranged_d, diamond, h_from_i, subdivision_e, subdivision_e_inverse, t_k,
};
use symdec::poly::{format_rat, parse_rat, reverse_i, Rat};
use symdec::rootcert::{interlaces, is_real_rooted};
use symdec::verify::{
    verify_all, verify_section2, verify_section3, verify_section4, verify_section5,
    SuiteReport, DEFAULT_SEED,
};
use symdec::zonotopes::{
    decompose_cs, ehrhart, hstar, interior_point_count, lawrence_hstar, ValuationSpec,
    ZonotopeSpec,
};
use symdec::{Poly, Result};

/// Exact arithmetic for symmetric decompositions, interlacing certificates,
/// Eulerian-type polynomial families, zonotope h*-polynomials, and
/// subdivision h-vectors. Polynomials are comma-separated rational
/// coefficients, lowest degree first.
#[derive(Parser)]
#[command(name = "symdec", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a polynomial from one of the combinatorial families
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Apply one of the linear operators to coefficient lists
    Op {
        #[command(subcommand)]
        op: OpKind,
    },
    /// Symmetric decomposition p = a + x b in a degree window
    Decompose(DecomposeArgs),
    /// Print family tables row by row
    Tables(TablesArgs),
    /// Zonotope pipelines
    Zono {
        #[command(subcommand)]
        cmd: ZonoCmd,
    },
    /// Simplicial complex and matroid h-vector pipelines
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Run theorem verification suites
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GenFamily {
    /// Eulerian polynomial, optionally colored
    Eulerian { n: usize, r: Option<u32> },
    /// Derangement polynomial, optionally colored
    Derangement { n: usize, r: Option<u32> },
    /// Signed-permutation descent polynomial B_k^d
    Typeb { k: usize, d: usize },
}

#[derive(Subcommand)]
enum OpKind {
    /// Subdivision operator
    E { poly: String },
    /// Inverse subdivision operator
    Einv { poly: String },
    /// Diamond product of two polynomials
    Diamond { p: String, q: String },
    /// Deranged map x^k -> d_k
    Dmap { poly: String },
    /// Valuation operator T_k
    Tk { poly: String, k: usize },
    /// h-polynomial of a polynomial lattice-count function
    Hfromi { poly: String, d: usize },
}

#[derive(Args)]
struct DecomposeArgs {
    /// Polynomial coefficients, lowest degree first
    #[arg(long)]
    poly: String,
    /// Degree window d
    #[arg(long)]
    degree: usize,
    /// Decomposition kind
    #[arg(long, value_enum, default_value_t = KindArg::I)]
    kind: KindArg,
    /// Attach real-rootedness and interlacing certificates
    #[arg(long)]
    certify: bool,
    /// With --certify, exit 1 unless b interlaces a
    #[arg(long, requires = "certify")]
    expect_interlacing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "R", alias = "r")]
    R,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long)]
    family: FamilyArg,
    /// Number of rows (or the window for typeb)
    #[arg(long)]
    n: usize,
    /// Emit LaTeX table rows
    #[arg(long)]
    latex: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Eulerian,
    Derangement,
    Typeb,
}

#[derive(Subcommand)]
enum ZonoCmd {
    /// Ehrhart and h* pipeline from a generator matrix
    Hstar(ZonoArgs),
}

#[derive(Args)]
struct ZonoArgs {
    /// Generator matrix: rows split by ';', entries by ','
    #[arg(long)]
    gens: String,
    /// Valuation coefficients alpha_0..alpha_d
    #[arg(long)]
    alpha: Option<String>,
    /// Check the centrally symmetric cone and certify interlacing
    #[arg(long)]
    cs: bool,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// h-polynomial of the barycentric subdivision of an h-vector
    Sdh {
        #[arg(long)]
        h: String,
    },
    /// Matroid independence-complex h-vector report
    Matroid {
        /// Bases: comma-separated elements, joined by ';'
        #[arg(long)]
        bases: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// all, s2, s3, s4, or s5
    suite: String,
    /// Largest n for the family suites
    #[arg(long, default_value_t = 7)]
    nmax: usize,
    /// RNG seed (overrides SYMDEC_SEED)
    #[arg(long)]
    seed: Option<u64>,
    /// Write the full report as JSON to this path
    #[arg(long)]
    json: Option<String>,
}

fn parse_poly(s: &str) -> Result<Poly> {
    s.parse()
}

fn parse_rat_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|t| parse_rat(t.trim())).collect()
}

fn coeff_json(p: &Poly, len: usize) -> serde_json::Value {
    serde_json::Value::Array((0..len).map(|k| format_rat(&p.coeff(k)).into()).collect())
}

fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = if c.abs() == Rat::from_integer(1.into()) && k > 0 {
            if c.is_negative() { "-".into() } else { String::new() }
        } else {
            format_rat(c)
        };
        let var = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{{{k}}}"),
        };
        terms.push(format!("{coeff}{var}"));
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}

fn run_gen(family: GenFamily) -> Result<()> {
    let p = match family {
        GenFamily::Eulerian { n, r } => match r {
            None | Some(1) => eulerian(n),
            Some(r) => colored_eulerian(n, r)?,
        },
        GenFamily::Derangement { n, r } => match r {
            None | Some(1) => derangement(n),
            Some(r) => colored_derangement(n, r)?,
        },
        GenFamily::Typeb { k, d } => typeb(k, d)?,
    };
    println!("{p}");
    Ok(())
}

fn run_op(op: OpKind) -> Result<()> {
    let p = match op {
        OpKind::E { poly } => subdivision_e(&parse_poly(&poly)?),
        OpKind::Einv { poly } => subdivision_e_inverse(&parse_poly(&poly)?),
        OpKind::Diamond { p, q } => diamond(&parse_poly(&p)?, &parse_poly(&q)?),
        OpKind::Dmap { poly } => deranged_d(&parse_poly(&poly)?),
        OpKind::Tk { poly, k } => t_k(&parse_poly(&poly)?, k),
        OpKind::Hfromi { poly, d } => h_from_i(&parse_poly(&poly)?, d)?,
    };
    println!("{p}");
    Ok(())
}

fn run_decompose(args: DecomposeArgs) -> Result<bool> {
    let p = parse_poly(&args.poly)?;
    let d = args.degree;
    let dec = match args.kind {
        KindArg::I => decompose_i(&p, d)?,
        KindArg::R => decompose_r(&p, d)?,
    };
    let mut obj = serde_json::json!({
        "a": coeff_json(&dec.a, d + 1),
        "b": coeff_json(&dec.b, d.max(1)),
        "d": d,
        "kind": match dec.kind { DecompositionKind::I => "I", DecompositionKind::R => "R" },
    });
    let mut interlocks = true;
    if args.certify {
        let cert = interlaces(&dec.b, &dec.a);
        let cert_json = match &cert {
            Ok(c) => c.to_json(),
            Err(e) => serde_json::json!({ "holds": false, "reason": e.to_string() }),
        };
        interlocks = cert.map(|c| c.holds).unwrap_or(false);
        obj["certificates"] = serde_json::json!({
            "a_real_rooted": is_real_rooted(&dec.a),
            "b_real_rooted": is_real_rooted(&dec.b),
            "b_interlaces_a": cert_json,
        });
    }
    println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    Ok(!args.expect_interlacing || interlocks)
}

fn run_tables(args: TablesArgs) -> Result<()> {
    match args.family {
        FamilyArg::Eulerian | FamilyArg::Derangement => {
            for n in 1..=args.n {
                let p = match args.family {
                    FamilyArg::Eulerian => eulerian(n),
                    _ => derangement(n),
                };
                if args.latex {
                    println!("{n} & ${}$ \\\\", latex_poly(&p));
                } else {
                    println!("{p}");
                }
            }
        }
        FamilyArg::Typeb => {
            for k in 0..=args.n {
                let p = typeb(k, args.n)?;
                if args.latex {
                    println!("{k} & ${}$ \\\\", latex_poly(&p));
                } else {
                    println!("{p}");
                }
            }
        }
    }
    Ok(())
}

fn parse_gens(s: &str) -> Result<ZonotopeSpec> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|e| {
                    e.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {e:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    let m = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse("ragged generator matrix".into()));
    }
    // columns of the row-input matrix are the generators
    let cols: Vec<Vec<i64>> = (0..m).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let col_refs: Vec<&[i64]> = cols.iter().map(|c| c.as_slice()).collect();
    let _ = n;
    Ok(ZonotopeSpec::from_cols(&col_refs))
}

fn run_zono(args: ZonoArgs) -> Result<bool> {
    let z = parse_gens(&args.gens)?;
    let d = z.dim();
    let i = ehrhart(&z);
    let lh = lawrence_hstar(&z)?;
    let interior = interior_point_count(&z);
    let val = match &args.alpha {
        None => None,
        Some(a) => Some(ValuationSpec::new(parse_rat_list(a)?)?),
    };
    let h = hstar(&z, val.as_ref())?;
    let dec = decompose_i(&h, d)?;
    let rr = is_real_rooted(&dec.a) && is_real_rooted(&dec.b);
    let ai = is_alternatingly_increasing(&h, d)?;
    let mut certs = serde_json::json!({
        "decomposition_real_rooted": rr,
        "alternatingly_increasing": ai,
    });
    let mut ok = true;
    if args.cs {
        match decompose_cs(&z) {
            Ok(c) => {
                let cert = interlaces(&reverse_i(&h, d)?, &h)?;
                ok = cert.holds;
                certs["cs"] = serde_json::json!({
                    "cone_coefficients": c.iter().map(|v| format_rat(v)).collect::<Vec<_>>(),
                    "reciprocal_interlaces": cert.to_json(),
                });
            }
            Err(Error::NotCentrallySymmetricForm) => {
                ok = false;
                certs["cs"] = serde_json::json!({ "error": "not in centrally symmetric form" });
            }
            Err(e) => return Err(e),
        }
    }
    let obj = serde_json::json!({
        "ehrhart": coeff_json(&i, d + 1),
        "lawrence": lh.iter().map(|v| format_rat(v)).collect::<Vec<_>>(),
        "hstar": coeff_json(&h, d + 1),
        "interior": interior.to_string(),
        "certificates": certs,
    });
    println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
    Ok(ok)
}

fn run_complex(cmd: ComplexCmd) -> Result<()> {
    match cmd {
        ComplexCmd::Sdh { h } => {
            let coeffs = parse_rat_list(&h)?;
            let d = coeffs.len() - 1;
            let hv = HVector::new(coeffs, d)?;
            println!("{}", sd_h(&hv)?);
        }
        ComplexCmd::Matroid { bases } => {
            let sets: Vec<std::collections::BTreeSet<usize>> = bases
                .split(';')
                .map(|b| {
                    b.split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| {
                            t.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::Parse(format!("bad element {t:?}")))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let n = sets.iter().flat_map(|b| b.iter().copied()).max().unwrap_or(0);
            let m = Matroid::new(n, sets)?;
            let hv = m.h_vector()?;
            let obj = serde_json::json!({
                "h_vector": hv.h.iter().map(|v| format_rat(v)).collect::<Vec<_>>(),
                "d": hv.d,
                "coloop_free": m.is_coloop_free(),
                "level_2cm": level_2cm_check(&hv),
                "sd_h": format!("{}", sd_h(&hv)?),
            });
            println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
        }
    }
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let seed = args
        .seed
        .or_else(|| std::env::var("SYMDEC_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_SEED);
    let reports: Vec<SuiteReport> = match args.suite.as_str() {
        "all" => verify_all(args.nmax, seed)?,
        "s2" => verify_section2()?,
        "s3" => vec![verify_section3(args.nmax.min(9), 3, seed)?],
        "s4" => vec![verify_section4(seed)?],
        "s5" => vec![verify_section5(5)?],
        other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
    };
    for r in &reports {
        println!("{}", r.summary_line());
        for f in &r.failures {
            println!("  FAIL {} :: {}", f.input, f.property);
        }
    }
    if let Some(path) = &args.json {
        let body = serde_json::to_string_pretty(&reports).expect("serializable");
        std::fs::write(path, body).map_err(|e| Error::Internal(e.to_string()))?;
    }
    Ok(reports.iter().all(|r| r.ok()))
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { family } => run_gen(family).map(|_| true),
        Command::Op { op } => run_op(op).map(|_| true),
        Command::Decompose(args) => run_decompose(args),
        Command::Tables(args) => run_tables(args).map(|_| true),
        Command::Zono { cmd: ZonoCmd::Hstar(args) } => run_zono(args),
        Command::Complex { cmd } => run_complex(cmd).map(|_| true),
        Command::Verify(args) => run_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e @ Error::Parse(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
