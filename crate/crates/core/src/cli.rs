//! The `pointspace` command-line tool.
//!
//! Every command reads one JSON input file (`-` for stdin) holding either
//! `{"presentation": ...}` or `{"generator": ...}` and prints JSON, a plain
//! text table, or Graphviz DOT.
//!
//! Exit codes: 0 success, 1 other failure, 2 work budget refused, 3 schema
//! error in the input.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::dims;
use crate::error::{Error, Result};
use crate::genfun::{build_quiver, count_sequence, head_counts, generating_function, recurrence_check, Recurrence};
use crate::io::{
    format_seq, parse_input, ComponentsJson, FactorsJson, Int, MonGraphJson, QuiverJson, RadicalJson, Source,
};
use crate::moduli::{
    components, count_components, dim_profile, irreducibility_report, p1_report, verify_point_module, Config,
    Variant, VerificationFailure, DEFAULT_BUDGET, DEFAULT_HORIZON,
};
use crate::morphisms::{graded_aut_permutations, iso_monomial, iso_truncated, mon_graph};
use crate::radical::{prolongable_radical, subshift_language};
use crate::words::{Side, DEFAULT_PREFIX_MULTIPLIER};
use crate::{Exactness, MonomialAlgebra};

#[derive(Parser, Debug)]
#[command(name = "pointspace", version, about = "Point-module moduli of monomial algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Work budget for brute-force enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    pub budget: u64,
    /// Scanned prefix length per factor length, for non-periodic words.
    #[arg(long, default_value_t = DEFAULT_PREFIX_MULTIPLIER, global = true)]
    pub prefix_multiplier: usize,
    /// Extension depth used to test prolongability over word oracles.
    #[arg(long, default_value_t = DEFAULT_HORIZON, global = true)]
    pub horizon: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(alias = "l")]
    Left,
    #[value(alias = "r")]
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Point,
    Truncated,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Point => Variant::Point,
            VariantArg::Truncated => Variant::Truncated,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert series of a presentation.
    Hilbert { input: PathBuf },
    /// Graded dimensions for n = 0..=n-max.
    Dims {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Linear versus superlinear growth, with a certificate.
    GrowthClass { input: PathBuf },
    /// One-sided prolongable radical and the quotient.
    Radical {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Words of the associated subshift up to length n.
    SubshiftLang {
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Irreducible components of the degree-n scheme.
    Components {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Point)]
        variant: VariantArg,
        #[arg(long)]
        n: usize,
    },
    /// Number of components in degree n.
    Count {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Point)]
        variant: VariantArg,
        #[arg(long)]
        n: usize,
    },
    /// Rational generating function of the component counts.
    Genfun {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Point)]
        variant: VariantArg,
        /// Include the quiver in the output.
        #[arg(long)]
        quiver: bool,
    },
    /// Shortest linear recurrence of the component counts.
    Recurrence {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Point)]
        variant: VariantArg,
        #[arg(long, default_value_t = 15)]
        n_max: usize,
    },
    /// Isomorphism by letter permutations.
    Iso {
        left: PathBuf,
        right: PathBuf,
        /// Degree up to which monomial languages are compared.
        #[arg(long = "N", alias = "degree", default_value_t = 6)]
        degree: usize,
    },
    /// Letter permutations that are graded automorphisms.
    Aut {
        input: PathBuf,
        #[arg(long = "N", alias = "degree", default_value_t = 8)]
        degree: usize,
    },
    /// The tree of non-zero monomials.
    Mongraph {
        input: PathBuf,
        #[arg(long)]
        depth: usize,
        /// Also write the graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Factor complexity p(0..=n).
    Complexity {
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// k-balance of the factors up to length n.
    Balanced {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Left or right special factors of length n.
    Special {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Projective-line shape of the scheme of a Sturmian word.
    P1Report {
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Checks the "module" rows of the input against the relations.
    VerifyModule { input: PathBuf },
    /// Irreducibility of the schemes and the predicted free quotient.
    IrreducibleReport {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Dimensions of the point schemes for n = 0..=n-max.
    DimProfile {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

/// A rendered result.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub table: String,
    pub dot: Option<String>,
}

impl Output {
    fn new(json: Value, table: String) -> Self {
        Output { json, table, dot: None }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("JSON value") + "\n"),
            Format::Table => Ok(self.table.clone()),
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| Error::InvalidInput("DOT output is only available for mongraph".into())),
        }
    }
}

fn read_source(path: &PathBuf) -> Result<crate::io::InputFile> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
    };
    parse_input(&text)
}

fn words_json(a: &crate::Alphabet, ws: impl IntoIterator<Item = impl AsRef<[u8]>>) -> Vec<String> {
    ws.into_iter().map(|w| a.format_word(w.as_ref())).collect()
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = Config { budget: cli.budget, horizon: cli.horizon };
    let mult = cli.prefix_multiplier;
    let load = |path: &PathBuf| read_source(path)?.source();
    match &cli.command {
        Command::Hilbert { input } => {
            let src = load(input)?;
            let p = src.presentation("the Hilbert series is computed from relations")?;
            let gf = p.hilbert_series();
            let mut json = serde_json::to_value(&gf).expect("gf");
            json["exactness"] = json!(Exactness::Exact);
            Ok(Output::new(json, format!("H(t) = {gf}  [exact]\n")))
        }
        Command::Dims { input, n_max } => {
            let src = load(input)?;
            let a = src.algebra(*n_max, mult)?;
            let values: Vec<BigInt> = match &src {
                Source::Presentation(p) => dims(p, n_max + 1),
                Source::Generator(_) => (0..=*n_max).map(|n| a.graded_dim(n)).collect::<Result<_>>()?,
            };
            let mut table = String::from("n\tdim\n");
            for (n, v) in values.iter().enumerate() {
                let _ = writeln!(table, "{n}\t{v}");
            }
            let json = json!({
                "dims": values.into_iter().map(Int).collect::<Vec<_>>(),
                "exactness": a.exactness(),
            });
            Ok(Output::new(json, table))
        }
        Command::GrowthClass { input } => {
            let src = load(input)?;
            let p = src.presentation("growth classification uses the transfer graph")?;
            let g = p.growth_class();
            let json = json!({ "class": g.class, "certificate": g.certificate, "exactness": Exactness::Exact });
            Ok(Output::new(json, format!("{:?}  ({:?})  [exact]\n", g.class, g.certificate)))
        }
        Command::Radical { input, side } => {
            let src = load(input)?;
            let p = src.presentation("the radical is computed from relations")?;
            let r = prolongable_radical(p, (*side).into());
            let j = RadicalJson::new(&r);
            let table = format!(
                "generators: {}\nquotient relations: {}\nprolongable input: {}\n",
                if j.generators.is_empty() { "(none)".to_string() } else { j.generators.join(", ") },
                words_json(p.alphabet(), r.quotient.forbidden().iter().map(|w| &w.0[..])).join(", "),
                j.prolongable_input
            );
            Ok(Output::new(serde_json::to_value(&j).expect("radical"), table))
        }
        Command::SubshiftLang { input, n } => {
            let src = load(input)?;
            let p = src.presentation("the subshift language is derived from relations")?;
            let f = subshift_language(p, *n)?;
            let j = FactorsJson::new(p.alphabet(), &f);
            let mut table = String::new();
            for (k, ws) in &j.factors {
                let _ = writeln!(table, "{k}: {}", ws.join(" "));
            }
            Ok(Output::new(serde_json::to_value(&j).expect("factors"), table))
        }
        Command::Components { input, variant, n } => {
            let src = load(input)?;
            let variant: Variant = (*variant).into();
            let a = src.algebra(variant.oracle_len(*n, &cfg), mult)?;
            let c = components(&a, *n, variant, &cfg)?;
            let j = ComponentsJson::new(a.alphabet(), &c);
            let mut table = String::new();
            for s in &c.components {
                let _ = writeln!(table, "{}  dim {}", s.display(a.alphabet()), s.dimension());
            }
            let _ = writeln!(table, "{} components, dimension {}  [{}]", j.count, j.dimension, j.exactness);
            Ok(Output::new(serde_json::to_value(&j).expect("components"), table))
        }
        Command::Count { input, variant, n } => {
            let src = load(input)?;
            let variant: Variant = (*variant).into();
            let a = src.algebra(variant.oracle_len(*n, &cfg), mult)?;
            let c = count_components(&a, *n, variant, &cfg)?;
            let json = json!({ "variant": variant, "n": n, "count": c.count, "exactness": c.exactness });
            Ok(Output::new(json, format!("{}  [{}]\n", c.count, c.exactness)))
        }
        Command::Genfun { input, variant, quiver } => {
            let src = load(input)?;
            let p = src.presentation("generating functions need a presentation")?;
            let variant: Variant = (*variant).into();
            let q = build_quiver(p, variant, &cfg)?;
            let gf = generating_function(&q, &head_counts(p, variant, &cfg)?)?;
            let mut json = json!({
                "variant": variant,
                "gf": gf,
                "display": gf.to_string(),
                "quiver_vertices": q.len(),
                "exactness": Exactness::Exact,
            });
            if *quiver {
                json["quiver"] = serde_json::to_value(QuiverJson::new(p.alphabet(), &q)).expect("quiver");
            }
            Ok(Output::new(json, format!("sum a_n t^n = {gf}  [exact]\n")))
        }
        Command::Recurrence { input, variant, n_max } => {
            let src = load(input)?;
            let variant: Variant = (*variant).into();
            let (values, exactness) = match &src {
                Source::Presentation(p) => (count_sequence(p, variant, *n_max, &cfg)?.values, Exactness::Exact),
                Source::Generator(_) => {
                    let a = src.algebra(variant.oracle_len(*n_max, &cfg), mult)?;
                    let mut ex = Exactness::Exact;
                    let mut vals = Vec::new();
                    for n in 0..=*n_max {
                        let c = count_components(&a, n, variant, &cfg)?;
                        ex = ex.and(c.exactness);
                        vals.push(BigInt::from(c.count));
                    }
                    (vals, ex)
                }
            };
            let r = recurrence_check(&values)?;
            let coeffs: Vec<String> = match &r {
                Recurrence::Found { coeffs } => coeffs.iter().map(ToString::to_string).collect(),
                Recurrence::NoneFound => Vec::new(),
            };
            let json = json!({
                "values": values.iter().cloned().map(Int).collect::<Vec<_>>(),
                "recurrence": r.to_string(),
                "order": r.order(),
                "coefficients": coeffs,
                "exactness": exactness,
            });
            let vals: Vec<String> = values.iter().map(ToString::to_string).collect();
            Ok(Output::new(json, format!("{}\n{r}  [{exactness}]\n", vals.join(", "))))
        }
        Command::Iso { left, right, degree } => {
            let (a, b) = (load(left)?, load(right)?);
            let json = if let (Source::Presentation(pa), Source::Presentation(pb)) = (&a, &b) {
                let sigma = iso_monomial(pa, pb)?;
                let verdict = match &sigma {
                    Some(s) => format!("ISOMORPHIC via {s}"),
                    None => "NOT ISOMORPHIC".to_string(),
                };
                json!({
                    "isomorphic": sigma.is_some(),
                    "verdict": verdict,
                    "permutation": sigma,
                    "exactness": Exactness::Exact,
                })
            } else {
                let (aa, ab) = (a.algebra(*degree, mult)?, b.algebra(*degree, mult)?);
                let r = iso_truncated(&aa, &ab, *degree)?;
                let verdict = if r.isomorphic() {
                    let s: Vec<String> = r.survivors.iter().map(ToString::to_string).collect();
                    format!("NO OBSTRUCTION UP TO DEGREE {degree} (surviving permutations: {})", s.join(" "))
                } else {
                    format!("NOT ISOMORPHIC (witness degree ≤ {degree})")
                };
                json!({
                    "isomorphic": r.isomorphic(),
                    "verdict": verdict,
                    "survivors": r.survivors,
                    "degree": r.degree,
                    "refuted_at": r.refuted_at,
                    "exactness": r.exactness,
                })
            };
            let table = format!("{}  [{}]\n", json["verdict"].as_str().unwrap_or(""), json["exactness"].as_str().unwrap_or(""));
            Ok(Output::new(json, table))
        }
        Command::Aut { input, degree } => {
            let src = load(input)?;
            let a = src.algebra(*degree, mult)?;
            let g = graded_aut_permutations(&a, *degree)?;
            let gens: Vec<String> = g.generators.iter().map(ToString::to_string).collect();
            let shape = if gens.is_empty() {
                format!("G_m^{}", g.torus_rank)
            } else {
                format!("G_m^{} x| <{}>", g.torus_rank, gens.join(", "))
            };
            let json = json!({
                "order": g.order(),
                "elements": g.elements,
                "generators": g.generators,
                "torus_rank": g.torus_rank,
                "shape": shape,
                "degree": g.degree,
                "exactness": g.exactness,
            });
            Ok(Output::new(json, format!("order {}: {shape}  [{}]\n", g.order(), g.exactness)))
        }
        Command::Mongraph { input, depth, dot } => {
            let src = load(input)?;
            let a = src.algebra(*depth, mult)?;
            let g = mon_graph(&a, *depth)?;
            let rendered = g.to_dot(a.alphabet());
            if let Some(path) = dot {
                std::fs::write(path, &rendered).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            }
            let j = MonGraphJson::new(a.alphabet(), &g, a.exactness());
            let mut table = String::from("layer\tsize\tsplitting\n");
            for (i, layer) in j.layers.iter().enumerate() {
                let split = j.splitting.get(i).map(|s| s.join(" ")).unwrap_or_default();
                let _ = writeln!(table, "{i}\t{}\t{split}", layer.len());
            }
            let mut out = Output::new(serde_json::to_value(&j).expect("mongraph"), table);
            out.dot = Some(rendered);
            Ok(out)
        }
        Command::Complexity { input, n } => {
            let (_, f) = oracle_factors(&load(input)?, *n, mult)?;
            let p = f.complexity();
            let table = p.iter().enumerate().map(|(k, v)| format!("p({k}) = {v}\n")).collect();
            Ok(Output::new(json!({ "p": p, "exactness": f.exactness() }), table))
        }
        Command::Balanced { input, k, n } => {
            let (a, f) = oracle_factors(&load(input)?, *n, mult)?;
            let b = f.balance(*k);
            let witness = b.witness.as_ref().map(|w| {
                json!({
                    "n": w.n,
                    "letter": a.alphabet().symbol(w.letter),
                    "low": a.alphabet().format_word(&w.low),
                    "high": a.alphabet().format_word(&w.high),
                })
            });
            let table = match &witness {
                None => format!("{k}-balanced up to length {n}  [{}]\n", f.exactness()),
                Some(w) => format!("not {k}-balanced: {} vs {}  [{}]\n", w["low"], w["high"], f.exactness()),
            };
            let json = json!({ "k": k, "n": n, "balanced": b.balanced, "witness": witness, "exactness": f.exactness() });
            Ok(Output::new(json, table))
        }
        Command::Special { input, n, side } => {
            let (a, f) = oracle_factors(&load(input)?, n + 1, mult)?;
            let side: Side = (*side).into();
            let words = words_json(a.alphabet(), f.special(*n, side)?.iter().map(|w| &w.0[..]));
            let table = format!("{}  [{}]\n", words.join(" "), f.exactness());
            let json = json!({ "n": n, "side": side, "words": words, "exactness": f.exactness() });
            Ok(Output::new(json, table))
        }
        Command::P1Report { input, n } => {
            let Source::Generator(g) = load(input)? else {
                return Err(Error::InvalidInput("p1-report needs a word generator".into()));
            };
            let r = p1_report(&g.generator, *n, &cfg, mult)?;
            let al = &g.alphabet;
            let json = json!({
                "n": r.n,
                "complexity": r.complexity,
                "line": r.line.as_ref().map(|s| format_seq(al, s)),
                "line_points": r.line_points.as_ref().map(|ws| words_json(al, ws.iter().map(|w| &w.0[..]))),
                "lines_found": r.lines_found,
                "others_are_points": r.others_are_points,
                "count": r.count,
                "expected_count": r.expected_count,
                "dimension": r.dimension,
                "matches_shape": r.matches_shape(),
                "exactness": r.exactness,
            });
            let table = format!(
                "line: {}\ncomponents: {} (expected {}), dimension {}\nshape {}  [{}]\n",
                r.line.as_ref().map_or("(none)".to_string(), |s| s.display(al)),
                r.count,
                r.expected_count,
                r.dimension,
                if r.matches_shape() { "matches" } else { "DOES NOT match" },
                r.exactness
            );
            Ok(Output::new(json, table))
        }
        Command::VerifyModule { input } => {
            let file = read_source(input)?;
            let src = file.source()?;
            let m = file.module()?;
            let a = src.algebra(m.scalars.len(), mult)?;
            let v = verify_point_module(&a, &m)?;
            let failure = v.failure.as_ref().map(|f| match f {
                VerificationFailure::ZeroRow { row } => json!({ "kind": "zero_row", "row": row }),
                VerificationFailure::Relation { word, position } => json!({
                    "kind": "relation",
                    "word": a.alphabet().format_word(word),
                    "position": position,
                }),
            });
            let json = json!({
                "holds": v.holds,
                "failure": failure,
                "support_coherent": v.support_coherent,
                "support": format_seq(a.alphabet(), &m.support()),
                "exactness": a.exactness(),
            });
            let table = match &failure {
                None => "module verified\n".to_string(),
                Some(f) => format!("not a module: {f}\n"),
            };
            Ok(Output::new(json, table))
        }
        Command::IrreducibleReport { input, n_max } => {
            let src = load(input)?;
            let p = src.presentation("the irreducibility report works from relations")?;
            let r = irreducibility_report(p, *n_max, &cfg)?;
            let al = p.alphabet();
            let json = json!({
                "counts": r.counts,
                "irreducible": r.irreducible(),
                "first_reducible": r.first_reducible,
                "chain": r.chain.as_ref().map(|s| format_seq(al, s)),
                "chain_is_decreasing": r.chain_is_decreasing,
                "stabilization_index": r.stabilization_index,
                "free_rank": r.free_rank,
                "nilpotent_generators": r.nilpotent_letters.iter().map(|&l| al.symbol(l)).collect::<Vec<_>>(),
                "nilpotency_bound": r.nilpotency_bound,
                "nilpotency_index": r.nilpotency_index,
                "quotient_is_free": r.quotient_is_free,
                "exactness": Exactness::Exact,
            });
            let table = if r.irreducible() {
                format!(
                    "irreducible through n = {n_max}; free rank {}, nilpotent generators {:?}, N^{} = 0\n",
                    r.free_rank.unwrap_or(0),
                    json["nilpotent_generators"],
                    r.nilpotency_index.map_or("?".to_string(), |i| i.to_string())
                )
            } else {
                format!("reducible at n = {}\n", r.first_reducible.unwrap_or(0))
            };
            Ok(Output::new(json, table))
        }
        Command::DimProfile { input, n_max } => {
            let src = load(input)?;
            let a = src.algebra(Variant::Point.oracle_len(*n_max, &cfg), mult)?;
            let d = dim_profile(&a, *n_max, &cfg)?;
            let json = json!({ "dims": d.dims, "stabilized": d.stabilized, "exactness": d.exactness });
            let dims: Vec<String> = d.dims.iter().map(ToString::to_string).collect();
            Ok(Output::new(json, format!("{}  (stabilized: {})  [{}]\n", dims.join(", "), d.stabilized, d.exactness)))
        }
    }
}

/// Factor set of a generator, or of a presentation's subshift.
fn oracle_factors(src: &Source, n: usize, mult: usize) -> Result<(MonomialAlgebra, crate::FactorSet)> {
    let a = src.algebra(n, mult)?;
    let f = match &a {
        MonomialAlgebra::Oracle { factors, .. } => factors.clone(),
        MonomialAlgebra::Presented(p) => subshift_language(p, n)?,
    };
    Ok((a, f))
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 2,
        Error::Schema(_) | Error::InvalidAlphabet(_) | Error::InvalidWord { .. } => 3,
        _ => 1,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status with the text destined for stdout and stderr.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (code, String::new(), text) };
        }
    };
    match run(&cli).and_then(|o| o.render(cli.format)) {
        Ok(text) => (0, text, String::new()),
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}

pub fn main() -> i32 {
    let (code, out, err) = execute(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    code
}
