//! Command-line front end: factorization, decomposition, distance, bound,
//! duality, juxtaposition, and CSV tabulation over the code-spec file
//! format. Exit codes: 0 success, 1 parse/precondition error, 2 budget
//! refusal.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gqc_core::bounds::{jensen_bound_gqc, jensen_qc_bound};
use gqc_core::codespec::{parse_code_spec, serialize_code_spec};
use gqc_core::construct::juxtapose;
use gqc_core::cyclic::RingElem;
use gqc_core::duality::{dual_direct, dual_gqc, is_lcd, is_self_dual, Verdict};
use gqc_core::gqc::{is_gqc, multilevel_image, reconstruct, trace_codeword, GqcCode};
use gqc_core::lincode::DEFAULT_ENUM_BUDGET;
use gqc_core::polyring::{factor_xm_minus_1, Poly};
use gqc_core::{Error, Field, LinearCode};

const BUDGET_ENV: &str = "GQC_ENUM_BUDGET";

#[derive(Parser)]
#[command(name = "gqc", about = "Generalized quasi-cyclic code toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Field cardinality
    #[arg(long)]
    q: u64,
    /// Characteristic, required when q is not prime
    #[arg(long)]
    p: Option<u64>,
    /// Extension modulus over F_p, ascending comma-separated coefficients
    #[arg(long)]
    modulus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^m - 1 into distinct irreducible polynomials
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: usize,
    },
    /// Constituent decomposition of a code-spec file
    Decompose { file: PathBuf },
    /// Round-trip a code through its constituents; prints the canonical spec
    Reconstruct { file: PathBuf },
    /// Trace-representation spanning codewords and span verification
    Trace { file: PathBuf },
    /// Brute-force minimum distance
    Distance { file: PathBuf },
    /// Distance lower bound with level evidence and the true distance
    Bound { file: PathBuf },
    /// Dual code as a code-spec on stdout
    Dual { file: PathBuf },
    /// Structural checks: GQC property, self-dual and LCD verdicts
    Check {
        file: PathBuf,
        /// Only report the LCD verdict
        #[arg(long)]
        lcd: bool,
        /// Only report the self-dual verdict
        #[arg(long)]
        self_dual: bool,
    },
    /// Juxtaposition of two or more code-spec files
    Juxtapose {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Enumerate codes over divisor generators and write a CSV table
    Tabulate {
        #[command(flatten)]
        field: FieldArgs,
        /// Available block lengths, comma separated; rows cover every
        /// non-empty subset in order
        #[arg(long)]
        blocks: String,
        /// Maximum number of generators per code (1 or 2)
        #[arg(long, default_value_t = 1)]
        max_generators: usize,
        /// Output CSV path; existing rows are kept and the run resumes
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn budget() -> gqc_core::Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.parse::<u128>().map_err(|_| Error::Parse {
            line: 0,
            msg: format!("invalid {BUDGET_ENV} value '{s}'"),
        }),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET),
    }
}

fn make_field(args: &FieldArgs) -> gqc_core::Result<Field> {
    // reuse the code-spec header parser so the two entry points agree
    let mut text = format!("q={}\n", args.q);
    if let Some(p) = args.p {
        text.push_str(&format!("p={p}\n"));
    }
    if let Some(m) = &args.modulus {
        text.push_str(&format!("modulus={m}\n"));
    }
    text.push_str("blocks=1\n");
    Ok(parse_code_spec(&text)?.field().clone())
}

fn load(file: &PathBuf) -> gqc_core::Result<GqcCode> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", file.display()),
    })?;
    parse_code_spec(&text)
}

fn verdict_json(v: &Verdict) -> Value {
    json!({
        "holds": v.holds,
        "direct": v.direct,
        "constituent": v.constituent,
        "evidence": v.evidence.iter().map(|e| json!({
            "index": e.index,
            "kind": format!("{:?}", e.kind),
            "ok": e.ok,
        })).collect::<Vec<_>>(),
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Command) -> gqc_core::Result<()> {
    match cmd {
        Command::Factor { field, m } => {
            let f = make_field(&field)?;
            let fact = factor_xm_minus_1(&f, m)?;
            print_json(&json!({
                "q": f.cardinality(),
                "m": m,
                "factors": fact.factors().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "cosets": fact.cosets(),
            }));
            Ok(())
        }
        Command::Decompose { file } => {
            let code = load(&file)?;
            let set = code.decompose()?;
            let constituents: Vec<Value> = (0..set.num_constituents())
                .map(|i| {
                    json!({
                        "factor": set.table().factors()[i].to_string(),
                        "field_size": set.table().constituent_field(i).cardinality(),
                        "support": set.table().support()[i],
                        "dim": set.constituent(i).dim(),
                    })
                })
                .collect();
            print_json(&json!({
                "blocks": code.blocks(),
                "fq_dimension": set.fq_dimension(),
                "constituents": constituents,
            }));
            Ok(())
        }
        Command::Reconstruct { file } => {
            let code = load(&file)?;
            let set = code.decompose()?;
            let back = reconstruct(&set, code.blocks())?;
            if !back.equivalent(&code) {
                return Err(Error::Internal("round trip changed the code".into()));
            }
            print!("{}", serialize_code_spec(&back));
            Ok(())
        }
        Command::Trace { file } => {
            let code = load(&file)?;
            let set = code.decompose()?;
            let ell = code.blocks().len();
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for i in 0..set.num_constituents() {
                let ext = set.table().constituent_field(i).clone();
                let deg = set.table().factors()[i].degree().unwrap();
                let alpha = ext.alpha();
                for row in set.constituent(i).basis() {
                    let mut scaled = row.clone();
                    for _ in 0..deg {
                        let mut picks: Vec<Vec<gqc_core::FieldElement>> = (0..set
                            .num_constituents())
                            .map(|t| vec![set.table().constituent_field(t).zero(); ell])
                            .collect();
                        picks[i] = scaled.clone();
                        let w = trace_codeword(&set, &picks)?;
                        rows.push(w.iter().map(|c| c.index()).collect());
                        scaled = scaled.iter().map(|c| c.mul(&alpha)).collect();
                    }
                }
            }
            let span = LinearCode::from_rows(
                code.field(),
                code.length(),
                rows.iter()
                    .map(|r| r.iter().map(|&v| code.field().element_from_index(v)).collect())
                    .collect(),
            );
            let span_equals_code = span == code.to_linear();
            let multilevel_agrees = multilevel_image(&set)? == code.to_linear();
            print_json(&json!({
                "blocks": code.blocks(),
                "spanning_codewords": rows,
                "span_equals_code": span_equals_code,
                "multilevel_agrees": multilevel_agrees,
            }));
            if !span_equals_code || !multilevel_agrees {
                return Err(Error::Internal("trace span mismatch".into()));
            }
            Ok(())
        }
        Command::Distance { file } => {
            let code = load(&file)?;
            let lin = code.to_linear();
            let d = lin.min_distance_with(budget()?, false)?;
            print_json(&json!({
                "n": lin.length(),
                "k": lin.dim(),
                "d": d,
            }));
            Ok(())
        }
        Command::Bound { file } => {
            let code = load(&file)?;
            let mut report = jensen_bound_gqc(&code)?;
            let lin = code.to_linear();
            let true_d = lin.min_distance_with(budget()?, false)?;
            report.true_distance = Some(true_d);
            if report.bound > true_d {
                return Err(Error::Internal("bound exceeds true distance".into()));
            }
            let mut v = serde_json::to_value(&report).expect("serializable");
            if code.blocks().iter().all(|&m| m == code.blocks()[0]) {
                v["qc_bound"] = json!(jensen_qc_bound(&code)?);
            }
            print_json(&v);
            Ok(())
        }
        Command::Dual { file } => {
            let code = load(&file)?;
            let dual = match dual_gqc(&code) {
                Ok(d) => d,
                Err(Error::CrtUnavailable { .. }) => {
                    // non-coprime blocks: the direct dual is still GQC; its
                    // RREF rows generate it as a module
                    let lin = dual_direct(&code)?;
                    gqc_from_rows(&lin, code.blocks())
                }
                Err(e) => return Err(e),
            };
            print!("{}", serialize_code_spec(&dual));
            Ok(())
        }
        Command::Check {
            file,
            lcd,
            self_dual,
        } => {
            let code = load(&file)?;
            let lin = code.to_linear();
            let gqc_ok = is_gqc(&lin, code.blocks())?;
            let mut out = json!({
                "blocks": code.blocks(),
                "n": lin.length(),
                "k": lin.dim(),
                "is_gqc": gqc_ok,
            });
            let both = !lcd && !self_dual;
            if lcd || both {
                out["lcd"] = verdict_json(&is_lcd(&code)?);
            }
            if self_dual || both {
                out["self_dual"] = verdict_json(&is_self_dual(&code)?);
            }
            print_json(&out);
            Ok(())
        }
        Command::Juxtapose { files } => {
            let codes = files.iter().map(load).collect::<gqc_core::Result<Vec<_>>>()?;
            print!("{}", serialize_code_spec(&juxtapose(&codes)?));
            Ok(())
        }
        Command::Tabulate {
            field,
            blocks,
            max_generators,
            out,
        } => {
            let f = make_field(&field)?;
            let pool: Vec<usize> = blocks
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    s.trim().parse::<usize>().map_err(|_| Error::Parse {
                        line: 0,
                        msg: format!("invalid block length '{}'", s.trim()),
                    })
                })
                .collect::<gqc_core::Result<Vec<_>>>()?;
            tabulate(&f, &pool, max_generators, &out)
        }
    }
}

/// Rebuilds a GQC code from a linear code closed under per-block shift: the
/// RREF rows, read blockwise, generate the same module.
fn gqc_from_rows(lin: &LinearCode, blocks: &[usize]) -> GqcCode {
    let field = lin.field().clone();
    let gens = lin
        .basis()
        .iter()
        .map(|row| {
            let mut tuple = Vec::with_capacity(blocks.len());
            let mut off = 0;
            for &m in blocks {
                tuple.push(RingElem::from_coeffs(&field, row[off..off + m].to_vec()));
                off += m;
            }
            tuple
        })
        .collect();
    GqcCode::new(&field, blocks.to_vec(), gens)
}

/// All monic divisors of x^m - 1 in a deterministic order.
fn divisors_of_xm_minus_1(field: &Field, m: usize) -> gqc_core::Result<Vec<Poly>> {
    let fact = factor_xm_minus_1(field, m)?;
    let fs = fact.factors();
    let mut divisors = Vec::with_capacity(1 << fs.len());
    for mask in 0u32..(1 << fs.len()) {
        let mut d = Poly::one(field);
        for (i, f) in fs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d = d.mul(f);
            }
        }
        divisors.push(d);
    }
    divisors.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(divisors)
}

fn csv_header() -> &'static str {
    "blocks,generators,k,d,bound,self_dual,lcd"
}

fn tabulate(field: &Field, pool: &[usize], max_generators: usize, out: &PathBuf) -> gqc_core::Result<()> {
    let budget = budget()?;
    let mut pool = pool.to_vec();
    pool.sort_unstable();
    pool.dedup();
    // resume support: count data rows already present
    let existing = match std::fs::read_to_string(out) {
        Ok(s) => {
            let mut lines = s.lines();
            match lines.next() {
                Some(h) if h == csv_header() => lines.count(),
                Some(_) => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: "existing file has a different header".into(),
                    })
                }
                None => 0,
            }
        }
        Err(_) => 0,
    };
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)
        .map_err(|e| Error::Internal(format!("cannot open {}: {e}", out.display())))?;
    if existing == 0 && file.metadata().map(|m| m.len()).unwrap_or(0) == 0 {
        writeln!(file, "{}", csv_header()).map_err(|e| Error::Internal(e.to_string()))?;
    }
    let mut emitted = 0usize;
    for subset_mask in 1u32..(1 << pool.len()) {
        let blocks: Vec<usize> = pool
            .iter()
            .enumerate()
            .filter(|&(i, _)| subset_mask & (1 << i) != 0)
            .map(|(_, &m)| m)
            .collect();
        let per_block: Vec<Vec<Poly>> = blocks
            .iter()
            .map(|&m| divisors_of_xm_minus_1(field, m))
            .collect::<gqc_core::Result<Vec<_>>>()?;
        // all generator tuples: one divisor per block, skipping the tuple of
        // units (the full space is still included via proper divisors)
        let mut tuples: Vec<Vec<Poly>> = vec![Vec::new()];
        for opts in &per_block {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    opts.iter().map(move |d| {
                        let mut t2 = t.clone();
                        t2.push(d.clone());
                        t2
                    })
                })
                .collect();
        }
        let gen_sets: Vec<Vec<usize>> = if max_generators >= 2 {
            let single = (0..tuples.len()).map(|i| vec![i]);
            let pairs = (0..tuples.len())
                .flat_map(|i| (i + 1..tuples.len()).map(move |j| vec![i, j]));
            single.chain(pairs).collect()
        } else {
            (0..tuples.len()).map(|i| vec![i]).collect()
        };
        for gens in gen_sets {
            let code = GqcCode::new(
                field,
                blocks.clone(),
                gens.iter()
                    .map(|&gi| {
                        tuples[gi]
                            .iter()
                            .zip(&blocks)
                            .map(|(p, &m)| RingElem::from_poly(p, m))
                            .collect()
                    })
                    .collect(),
            );
            let lin = code.to_linear();
            if lin.is_zero() {
                continue;
            }
            emitted += 1;
            if emitted <= existing {
                continue; // checkpointed on a previous run
            }
            let gen_text: Vec<String> = gens
                .iter()
                .map(|&gi| {
                    tuples[gi]
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(" | ")
                })
                .collect();
            let (d_text, bound_text) = match lin.min_distance_with(budget, false) {
                Ok(d) => {
                    let b = jensen_bound_gqc(&code)
                        .map(|r| r.bound.to_string())
                        .unwrap_or_else(|_| "n/a".into());
                    (d.to_string(), b)
                }
                Err(Error::BudgetExceeded { .. }) => ("skipped".into(), "skipped".into()),
                Err(e) => return Err(e),
            };
            let sd = is_self_dual(&code)?.holds;
            let lcd = is_lcd(&code)?.holds;
            let blocks_text: Vec<String> = blocks.iter().map(|m| m.to_string()).collect();
            writeln!(
                file,
                "{},\"{}\",{},{},{},{},{}",
                blocks_text.join("+"),
                gen_text.join(" ; "),
                lin.dim(),
                d_text,
                bound_text,
                sd,
                lcd
            )
            .map_err(|e| Error::Internal(e.to_string()))?;
        }
    }
    Ok(())
}
