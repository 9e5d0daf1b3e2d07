//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! Exit codes: 0 on success, 1 when a precondition fails, 2 on malformed input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algnum::{
    cyclotomic, cyclotomic_index, factor_over_integers, house, is_algebraic_integer, is_algebraic_unit, is_reciprocal,
    minimal_poly_of_power, valuation_witness, IntPolynomial, LambdaSpec,
};
use crate::error::{Error, Result};
use crate::laurent::IdealShape1;
use crate::limits::{
    cb_rank, classify_limit, closure_points, embedding_check, find_phi_witness, geometric_samples, is_nondecreasing,
    is_tame, quotient_kernel_witness, verify_family, verify_phi, SequenceFamily, TameFamilySpec, TameVerdict,
};
use crate::marking::{agreement_of, is_generating_pair, pair_from_sigma, radius_cap, relation_set, MarkedGroup};
use crate::metabelian::{fox_eval, gelement_eval, Word};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "marked-limits", version, about = "Marked groups G(λ), their metabelian limits, and ball-based convergence checks")]
struct Cli {
    /// Emit the report as JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Numeric tolerance for root approximation.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Algebraic-number utilities.
    Algnum {
        #[command(subcommand)]
        op: AlgnumOp,
    },
    /// Decide whether a word is trivial in a marked group.
    Wp {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
    },
    /// Relation set on a ball of the free group.
    Ball {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
    /// Agreement radius between two marked groups (pass --group twice).
    Dist {
        #[arg(long, num_args = 1, required = true)]
        group: Vec<String>,
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
    /// Generating pair of G(λ) with prescribed cyclic exponents.
    #[command(allow_negative_numbers = true)]
    Pair {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: i64,
    },
    /// Classify the limit of (G(λ), S_n) along a family of exponent pairs.
    Limit {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        family: String,
        /// Compare each sampled term with its declared limit on balls.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 6)]
        radius: usize,
        /// Largest sample index; samples are 2, 4, 8, ...
        #[arg(long, default_value_t = 16)]
        samples: i64,
    },
    /// Closure points of G(λ) with their Cantor–Bendixson ranks.
    Closure {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        /// Also report pairwise agreement radii on this ball.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// First-order comparisons between G(λ) and M(λ).
    Theory {
        #[command(subcommand)]
        op: TheoryOp,
    },
}

#[derive(Subcommand, Debug)]
enum AlgnumOp {
    /// Largest modulus of the roots.
    House {
        #[arg(long)]
        poly: String,
    },
    /// Minimal polynomial of λ^power.
    Minpoly {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        power: u32,
    },
    /// Build Φ_m (--order) or recognise a cyclotomic polynomial (--poly).
    Cyclotomic {
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        order: Option<u64>,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Factor over the integers.
    Factor {
        #[arg(long)]
        poly: String,
    },
    /// Integrality, unit, reciprocity, torsion and an absolute value witness.
    Info {
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Subcommand, Debug)]
enum TheoryOp {
    /// Check φ_P: [[x,y],z] ≠ 1 and [x,y]^{P(z)} = 1, at a triple or by ball search.
    Phi {
        #[arg(long)]
        group: String,
        #[arg(long)]
        poly: String,
        /// Comma-separated words x,y,z.
        #[arg(long)]
        triple: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Compare w(a,b) in G(λ) with w(a,[a,b]) in M(λ) on a ball.
    Embedding {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 5)]
        radius: usize,
    },
    /// A word trivial in G(λ) but not in M(λ).
    Kernel {
        #[arg(long)]
        lambda: String,
    },
    /// Tameness of a multiplier family: finite:P1;P2, degree:d, house:ε or roots.
    Tame {
        #[arg(long)]
        family: String,
    },
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Value,
    pub elapsed_ms: f64,
}

/// Result of one invocation.
#[derive(Debug)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

struct Outcome {
    inputs: Vec<(&'static str, String)>,
    outputs: Value,
    summary: Vec<String>,
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T> {
    s.parse()
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must be positive, got {tol}")))
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn algnum(op: &AlgnumOp, tol: f64) -> Result<Outcome> {
    Ok(match op {
        AlgnumOp::House { poly } => {
            let p: IntPolynomial = parse(poly)?;
            let h = house(&p, tol)?;
            Outcome {
                inputs: vec![("poly", p.to_string())],
                outputs: to_value(&h),
                summary: vec![format!("house({p}) = {:.9} ± {:.1e}", h.value, h.error)],
            }
        }
        AlgnumOp::Minpoly { poly, power } => {
            let p: IntPolynomial = parse(poly)?;
            let q = minimal_poly_of_power(&p, *power)?;
            Outcome {
                inputs: vec![("poly", p.to_string()), ("power", power.to_string())],
                outputs: json!({ "minpoly": q }),
                summary: vec![format!("minimal polynomial of λ^{power}: {q}")],
            }
        }
        AlgnumOp::Cyclotomic { order, poly } => match (order, poly) {
            (Some(m), _) => {
                let c = cyclotomic(*m)?;
                Outcome {
                    inputs: vec![("order", m.to_string())],
                    outputs: json!({ "cyclotomic": c }),
                    summary: vec![format!("Φ_{m} = {c}")],
                }
            }
            (None, Some(s)) => {
                let p: IntPolynomial = parse(s)?;
                let idx = cyclotomic_index(&p);
                Outcome {
                    inputs: vec![("poly", p.to_string())],
                    outputs: json!({ "index": idx }),
                    summary: vec![match idx {
                        Some(m) => format!("{p} = Φ_{m}"),
                        None => format!("{p} is not cyclotomic"),
                    }],
                }
            }
            (None, None) => unreachable!("clap requires --order or --poly"),
        },
        AlgnumOp::Factor { poly } => {
            let p: IntPolynomial = parse(poly)?;
            let f = factor_over_integers(&p)?;
            let text: Vec<String> = f.factors.iter().map(|(g, m)| if *m == 1 { format!("({g})") } else { format!("({g})^{m}") }).collect();
            Outcome {
                inputs: vec![("poly", p.to_string())],
                outputs: json!({ "factorization": f, "irreducible": f.is_irreducible() }),
                summary: vec![format!("{p} = {} {}", f.unit, text.join(" "))],
            }
        }
        AlgnumOp::Info { lambda } => {
            let l: LambdaSpec = parse(lambda)?;
            let mut out = serde_json::Map::new();
            let mut summary = vec![format!("λ = {l}")];
            out.insert("root_of_unity_order".into(), json!(l.root_of_unity_order()?));
            if !l.is_transcendental() {
                let p = l.min_poly();
                let facts = [
                    ("algebraic_integer", is_algebraic_integer(p)),
                    ("algebraic_unit", is_algebraic_unit(p)),
                    ("reciprocal", is_reciprocal(p)),
                ];
                for (k, v) in facts {
                    out.insert(k.into(), json!(v));
                    summary.push(format!("{k}: {v}"));
                }
                if l.char_p() == 0 {
                    let h = house(p, tol)?;
                    summary.push(format!("house: {:.9} ± {:.1e}", h.value, h.error));
                    out.insert("house".into(), to_value(&h));
                    if l.root_of_unity_order()?.is_none() {
                        let w = valuation_witness(&l)?;
                        out.insert("valuation_witness".into(), to_value(&w));
                    }
                }
            }
            summary.push(format!("root of unity order: {:?}", l.root_of_unity_order()?));
            Outcome { inputs: vec![("lambda", l.to_string())], outputs: Value::Object(out), summary }
        }
    })
}

fn wp(group: &str, word: &str) -> Result<Outcome> {
    let g: MarkedGroup = parse(group)?;
    let w: Word = parse(word)?;
    let normal = match g.g_pair() {
        Some((ideal, pair)) => to_value(&gelement_eval(&ideal, &w, &pair)),
        None => to_value(&fox_eval(&w)),
    };
    let id = g.is_identity(&w);
    Ok(Outcome {
        inputs: vec![("group", g.to_string()), ("word", w.to_string())],
        outputs: json!({ "identity": id, "normal_form": normal }),
        summary: vec![format!("identity: {id}")],
    })
}

fn ball(group: &str, radius: usize) -> Result<Outcome> {
    let g: MarkedGroup = parse(group)?;
    let rs = relation_set(&g, radius)?;
    let counts: Vec<usize> = (0..=radius).map(|n| rs.of_length(n).len()).collect();
    let mut summary = vec![format!("{} relations of length ≤ {radius} in {g}", rs.words.len())];
    for n in 1..=radius {
        let ws = rs.of_length(n);
        if !ws.is_empty() {
            let shown: Vec<String> = ws.iter().take(8).map(|w| w.to_string()).collect();
            let more = if ws.len() > 8 { format!(" (+{})", ws.len() - 8) } else { String::new() };
            summary.push(format!("  length {n}: {}{more}", shown.join(" ")));
        }
    }
    Ok(Outcome {
        inputs: vec![("group", g.to_string()), ("radius", radius.to_string())],
        outputs: json!({ "counts_by_length": counts, "words": rs.words }),
        summary,
    })
}

fn dist(groups: &[String], radius: usize) -> Result<Outcome> {
    let [g1, g2] = groups else {
        return Err(Error::Parse(format!("dist needs exactly two --group values, got {}", groups.len())));
    };
    let (g1, g2): (MarkedGroup, MarkedGroup) = (parse(g1)?, parse(g2)?);
    let r = agreement_of(&relation_set(&g1, radius)?, &relation_set(&g2, radius)?);
    let exact = r < radius;
    let d = 0.5f64.powi(r as i32);
    Ok(Outcome {
        inputs: vec![("group", g1.to_string()), ("other", g2.to_string()), ("radius", radius.to_string())],
        outputs: json!({ "agreement": r, "distance": d, "distance_is_upper_bound": !exact }),
        summary: vec![format!("agreement radius {r}; distance {} 2^-{r}", if exact { "=" } else { "≤" })],
    })
}

fn pair(lambda: &str, k: i64, l: i64) -> Result<Outcome> {
    let lam: LambdaSpec = parse(lambda)?;
    let ideal = IdealShape1::from_lambda(&lam);
    let ((g, h), (wa, wb)) = pair_from_sigma(&ideal, k, l)?;
    let generating = is_generating_pair(&ideal, &(g.clone(), h.clone()));
    Ok(Outcome {
        inputs: vec![("lambda", lam.to_string()), ("k", k.to_string()), ("l", l.to_string())],
        outputs: json!({ "words": [wa, wb], "elements": [g, h], "generating": generating }),
        summary: vec![format!("S = ({wa}, {wb}); generating: {generating}")],
    })
}

fn limit(lambda: &str, family: &str, verify: bool, radius: usize, samples: i64) -> Result<Outcome> {
    let lam: LambdaSpec = parse(lambda)?;
    let fam: SequenceFamily = parse(family)?;
    let class = classify_limit(&lam, &fam)?;
    let mut outputs = json!({ "classification": class, "summary": class.to_string() });
    let mut summary = vec![format!("limit: {class}")];
    let mut inputs = vec![("lambda", lam.to_string()), ("family", fam.to_string())];
    if verify {
        if radius > radius_cap() {
            return Err(Error::Domain(format!("radius {radius} exceeds the cap {}", radius_cap())));
        }
        let ns = geometric_samples(samples);
        if ns.is_empty() {
            return Err(Error::Domain(format!("--samples {samples} leaves no sample (need at least 2)")));
        }
        let rows = verify_family(&lam, &fam, &class, &ns, radius)?;
        let mono = is_nondecreasing(&rows);
        summary.push(format!("{:>6} {:>10} {:>10}  agreement  limit", "n", "k", "l"));
        for r in &rows {
            summary.push(format!("{:>6} {:>10} {:>10}  {:>9}  {}", r.n, r.k, r.l, r.agreement, r.limit));
        }
        summary.push(format!("nondecreasing: {mono}"));
        outputs["verification"] = json!({ "radius": radius, "rows": rows, "nondecreasing": mono });
        inputs.push(("radius", radius.to_string()));
        inputs.push(("samples", samples.to_string()));
    }
    Ok(Outcome { inputs, outputs, summary })
}

fn closure(lambda: &str, kmax: u32, radius: Option<usize>) -> Result<Outcome> {
    let lam: LambdaSpec = parse(lambda)?;
    let pts = closure_points(&lam, kmax)?;
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for p in &pts {
        let rank = cb_rank(p, &lam)?;
        summary.push(format!("rank {rank}: {p}"));
        rows.push(json!({ "point": p, "cb_rank": rank }));
    }
    let mut outputs = json!({ "points": rows });
    let mut inputs = vec![("lambda", lam.to_string()), ("kmax", kmax.to_string())];
    if let Some(r) = radius {
        let sets = pts.iter().map(|p| relation_set(p, r)).collect::<Result<Vec<_>>>()?;
        let matrix: Vec<Vec<usize>> = sets.iter().map(|s| sets.iter().map(|t| agreement_of(s, t)).collect()).collect();
        summary.push(format!("pairwise agreement at radius {r}:"));
        for row in &matrix {
            summary.push(format!("  {}", row.iter().map(|v| format!("{v:>2}")).collect::<Vec<_>>().join(" ")));
        }
        outputs["agreement"] = json!(matrix);
        inputs.push(("radius", r.to_string()));
    }
    Ok(Outcome { inputs, outputs, summary })
}

fn parse_tame(s: &str) -> Result<TameFamilySpec> {
    let bad = || Error::Parse(format!("bad tame family '{s}': expected finite:P1;P2, degree:d, house:ε or roots"));
    if s.trim() == "roots" {
        return Ok(TameFamilySpec::RootsOfUnityFamily);
    }
    let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
    match kind.trim() {
        "finite" => Ok(TameFamilySpec::FiniteSet(arg.split(';').map(parse).collect::<Result<_>>()?)),
        "degree" => Ok(TameFamilySpec::DegreeBounded(arg.trim().parse().map_err(|_| bad())?)),
        "house" => Ok(TameFamilySpec::HouseBounded(arg.trim().parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

fn theory(op: &TheoryOp) -> Result<Outcome> {
    Ok(match op {
        TheoryOp::Phi { group, poly, triple, radius } => {
            let g: MarkedGroup = parse(group)?;
            let p: IntPolynomial = parse(poly)?;
            let mut inputs = vec![("group", g.to_string()), ("poly", p.to_string())];
            match triple {
                Some(t) => {
                    let ws = t.split(',').map(parse).collect::<Result<Vec<Word>>>()?;
                    let [x, y, z] = ws.as_slice() else {
                        return Err(Error::Parse(format!("triple '{t}' needs three words")));
                    };
                    let holds = verify_phi(&g, &p, &(x.clone(), y.clone(), z.clone()));
                    inputs.push(("triple", format!("{x},{y},{z}")));
                    Outcome { inputs, outputs: json!({ "holds": holds }), summary: vec![format!("φ holds: {holds}")] }
                }
                None => {
                    let w = find_phi_witness(&g, &p, *radius)?;
                    inputs.push(("radius", radius.to_string()));
                    let summary = match &w {
                        Some((x, y, z)) => format!("witness x={x}, y={y}, z={z}"),
                        None => format!("no witness of length ≤ {radius}"),
                    };
                    Outcome { inputs, outputs: json!({ "witness": w }), summary: vec![summary] }
                }
            }
        }
        TheoryOp::Embedding { lambda, radius } => {
            let lam: LambdaSpec = parse(lambda)?;
            let v = embedding_check(&lam, *radius)?;
            Outcome {
                inputs: vec![("lambda", lam.to_string()), ("radius", radius.to_string())],
                outputs: json!({ "consistent": v.is_none(), "violation": v }),
                summary: vec![match &v {
                    None => format!("G(λ) and M(λ) agree under b ↦ [a,b] on the ball of radius {radius}"),
                    Some(w) => format!("disagreement at {w}"),
                }],
            }
        }
        TheoryOp::Kernel { lambda } => {
            let lam: LambdaSpec = parse(lambda)?;
            let w = quotient_kernel_witness(&lam)?;
            Outcome {
                inputs: vec![("lambda", lam.to_string())],
                outputs: json!({ "witness": w }),
                summary: vec![format!("{w} is trivial in G(λ) and not in M(λ)")],
            }
        }
        TheoryOp::Tame { family } => {
            let spec = parse_tame(family)?;
            let v = is_tame(&spec)?;
            let line = match &v {
                TameVerdict::Certified { reason } => format!("tame: {reason}"),
                TameVerdict::NotCertified { reason } => format!("not certified: {reason}"),
            };
            Outcome { inputs: vec![("family", family.trim().to_string())], summary: vec![line], outputs: to_value(&v) }
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Algnum { op } => match op {
            AlgnumOp::House { .. } => "algnum house",
            AlgnumOp::Minpoly { .. } => "algnum minpoly",
            AlgnumOp::Cyclotomic { .. } => "algnum cyclotomic",
            AlgnumOp::Factor { .. } => "algnum factor",
            AlgnumOp::Info { .. } => "algnum info",
        },
        Command::Wp { .. } => "wp",
        Command::Ball { .. } => "ball",
        Command::Dist { .. } => "dist",
        Command::Pair { .. } => "pair",
        Command::Limit { .. } => "limit",
        Command::Closure { .. } => "closure",
        Command::Theory { op } => match op {
            TheoryOp::Phi { .. } => "theory phi",
            TheoryOp::Embedding { .. } => "theory embedding",
            TheoryOp::Kernel { .. } => "theory kernel",
            TheoryOp::Tame { .. } => "theory tame",
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    check_tol(cli.tol)?;
    match &cli.command {
        Command::Algnum { op } => algnum(op, cli.tol),
        Command::Wp { group, word } => wp(group, word),
        Command::Ball { group, radius } => ball(group, *radius),
        Command::Dist { group, radius } => dist(group, *radius),
        Command::Pair { lambda, k, l } => pair(lambda, *k, *l),
        Command::Limit { lambda, family, verify, radius, samples } => limit(lambda, family, *verify, *radius, *samples),
        Command::Closure { lambda, kmax, radius } => closure(lambda, *kmax, *radius),
        Command::Theory { op } => theory(op),
    }
}

/// Parses `argv` (including the program name), runs the command and renders its output.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return RunOutput { code, stdout, stderr, report: None };
        }
    };
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(o) => {
            let report = Report {
                schema: SCHEMA_VERSION,
                command: command_name(&cli.command).to_string(),
                inputs: o.inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
                outputs: o.outputs,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            let stdout = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                o.summary.join("\n") + "\n"
            };
            RunOutput { code: 0, stdout, stderr: String::new(), report: Some(report) }
        }
        Err(e) => {
            let code = match e {
                Error::Parse(_) => 2,
                Error::Domain(_) | Error::Internal(_) => 1,
            };
            RunOutput { code, stdout: String::new(), stderr: format!("error: {e}\n"), report: None }
        }
    }
}
